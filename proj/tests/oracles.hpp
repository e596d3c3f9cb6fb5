// Reference computations used by the tests. None of them call into the
// solvers they are used to check.
#pragma once

#include <optional>
#include <vector>

#include "codiff/pa_function.hpp"
#include "codiff/random.hpp"
#include "codiff/types.hpp"

namespace oracle {

using codiff::AugVector;
using codiff::Vector;

/// Projection of the origin onto conv(S) for |S| <= 3, by enumerating the
/// faces of the simplex.
AugVector projectSmallHull(const std::vector<AugVector>& s);

/// min_x max_i (a_i + <v_i, x>) by enumerating every choice of d+1 active
/// pieces. Returns nullopt when no vertex exists (gradients do not span R^d).
struct VertexMin {
  double value;
  Vector argmin;
};
std::optional<VertexMin> bruteMinMaxAffine(const std::vector<AugVector>& pieces, int d);

/// Global minimum of max_i (...) + min_j (...) by vertex enumeration per j.
std::optional<VertexMin> bruteGlobalMin(const codiff::DCForm& f);

/// max_i ( 0.5 (x - c_i)^T A_i (x - c_i) + e_i ).
struct Quadratic {
  Eigen::MatrixXd A;
  Vector c;
  double e;
  double value(const Vector& x) const;
  Vector grad(const Vector& x) const;
};

struct MaxQuadMin {
  double lower;  // dual value, a lower bound on the minimum
  double upper;  // primal value at x
  Vector x;
};

/// Minimum of a max of strongly convex quadratics by projected gradient
/// ascent on the dual over the probability simplex.
MaxQuadMin minMaxOfQuadratics(const std::vector<Quadratic>& qs, int max_iter = 200000,
                              double gap_tol = 1e-12);

/// Random quadratic with eigenvalues in [lo, hi].
Quadratic randomQuadratic(codiff::Rng& rng, int d, double lo, double hi);

/// Random expression tree of the given maximal depth. Leaves are affine
/// atoms or constants with small integer-ish data.
codiff::PAExpr randomExpr(codiff::Rng& rng, int d, int depth);

/// Euclidean projection onto the probability simplex.
Vector projectSimplex(const Vector& y);

}  // namespace oracle

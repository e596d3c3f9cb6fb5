#pragma once

#include <vector>

#include "codiff/pa_function.hpp"
#include "codiff/types.hpp"

namespace codiff {

/// Result of minimizing a polyhedral function over R^d.
struct LPOutcome {
  enum class Status { Bounded, UnboundedBelow };
  Status status = Status::Bounded;
  Vector argmin;  // Bounded
  double value = 0.0;  // Bounded; objective evaluated at argmin
  Vector ray;     // UnboundedBelow; the objective decreases linearly along it
  int piece = -1;  // pa_global_min only: minus-part index attaining the minimum

  bool bounded() const { return status == Status::Bounded; }
};

/// Minimizes max_i (a_i + <v_i, x>) over R^d through the epigraph LP
///   min t  s.t.  t >= a_i + <v_i, x>.
LPOutcome minMaxAffine(const std::vector<AugVector>& pieces, int d);

/// max_i (a_i + <v_i, x>).
double maxAffine(const std::vector<AugVector>& pieces, const Vector& x);

struct NonnegVerdict {
  enum class Kind { Nonnegative, AttainsNegative, UnboundedBelow };
  Kind kind = Kind::Nonnegative;
  AugVector min_norm;  // (a0, v0), min-norm point of conv(pieces)
  Vector witness;      // AttainsNegative: a point with negative value
  Vector direction;    // UnboundedBelow: a descent ray
};

/// Decides whether max_i (a_i + <v_i, x>) >= 0 on R^d. Boundedness comes
/// from the LP; for a bounded function the verdict is a0 >= -tol where a0 is
/// the first coordinate of the min-norm point of conv{(a_i, v_i)}.
NonnegVerdict classifyNonnegative(const std::vector<AugVector>& pieces, double tol = 1e-9);

/// Global minimum of a piecewise affine function: the minimum over j of the
/// polyhedral functions max_i (a_i + b_j + <v_i + w_j, x>).
LPOutcome paGlobalMin(const DCForm& f);

}  // namespace codiff

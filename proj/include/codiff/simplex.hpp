#pragma once

#include <Eigen/Core>

#include "codiff/types.hpp"

namespace codiff {

/// min c^T x  s.t.  A x = b,  x >= 0.
struct StandardFormLP {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
};

struct SimplexResult {
  enum class Status { Optimal, Unbounded, Infeasible };
  Status status = Status::Infeasible;
  Eigen::VectorXd x;    // optimal vertex (Optimal)
  double value = 0.0;   // c^T x (Optimal)
  Eigen::VectorXd ray;  // x + t*ray feasible for t >= 0, c^T ray < 0 (Unbounded)
  int pivots = 0;
};

struct SimplexOptions {
  double pivot_tol = 1e-9;
  int max_pivots = 100000;
};

/// Dense two-phase tableau simplex with Bland's rule. Throws Degenerate if
/// the pivot cap trips.
SimplexResult solveSimplex(const StandardFormLP& lp, const SimplexOptions& opts = {});

}  // namespace codiff

#pragma once

#include <vector>

#include "codiff/convex_hypodiff.hpp"
#include "codiff/minnorm.hpp"
#include "codiff/types.hpp"

namespace codiff {

struct MHDConfig {
  double sigma = 0.1;
  double gamma = 0.5;
  double stop_tol = 1e-8;  // on |(a_n, v_n)|
  int max_iter = 10000;
  int armijo_max_k = 60;
  MinNormOptions minnorm;

  /// Throws InvalidArgument when a field is outside its range.
  void validate() const;
};

struct MHDStep {
  Vector x;
  double f = 0.0;
  AugVector direction;  // (a_n, v_n)
  double norm = 0.0;
  double alpha = 0.0;  // 0 on the final record
  int k = -1;          // -1 on the final record
  double max_abs_a = 0.0;  // max |a| over the hypodifferential vertices at x
};

struct MHDTrace {
  enum class Status { Stationary, IterLimit, PrecisionLimit };
  std::vector<MHDStep> steps;  // one record per iterate, the last has no step
  Status status = Status::IterLimit;

  const MHDStep& final() const { return steps.back(); }
  int iterations() const { return static_cast<int>(steps.size()) - 1; }
};

const char* toString(MHDTrace::Status s);

struct ArmijoResult {
  double alpha = 1.0;
  int k = 0;
};

/// Largest gamma^k with f(x - gamma^k v) - f(x) <= -gamma^k sigma norm2.
/// Throws ArmijoFailure when k would exceed cfg.armijo_max_k.
ArmijoResult armijoStep(const ConvexFn& f, const Vector& x, const Vector& v, double norm2,
                        const MHDConfig& cfg);

/// Hypodifferential descent from x0. Stops when |(a_n, v_n)| <= stop_tol,
/// after max_iter steps, or with PrecisionLimit when the sufficient decrease
/// demanded by the line search is below the resolution of f's values.
MHDTrace mhdRun(const ConvexFn& f, const Vector& x0, const MHDConfig& cfg = {});

}  // namespace codiff

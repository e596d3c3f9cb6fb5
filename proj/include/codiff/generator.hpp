#pragma once

#include <cstdint>

#include "codiff/pa_function.hpp"
#include "codiff/types.hpp"

namespace codiff {

class GenerationFailure : public Error {
 public:
  using Error::Error;
};

struct GeneratedPA {
  DCForm f;
  double f_star = 0.0;  // global minimum from the LP oracle
  Vector argmin;
  /// Lower bound on the smallest nonzero min-norm value that can occur
  /// during global codifferential descent on f.
  double theta_hat = 0.0;
};

/// Random piecewise affine function that is bounded below by construction.
///
/// Gradients are integer vectors: the minus part has entries in {-2..2},
/// the plus part contains the 2d points +-(2d+1) e_k plus l - 2d random points
/// in the cube [-(2d+1), 2d+1]^d. The cross-polytope contains every |w_j|, so
/// each piece max_i (a_i + b_j + <v_i + w_j, x>) is coercive. Offsets are
/// uniform in [-scale, scale]. Deterministic in the seed.
///
/// Requires d >= 1, l >= 2d, s >= 1, scale > 0. Throws GenerationFailure if
/// the LP oracle does not confirm boundedness.
GeneratedPA generatePA(std::uint64_t seed, int d, int l, int s, double scale = 1.0);

/// Iteration budget 10 s (ceil(gap / min(theta, 1)) + 1), saturated at
/// INT_MAX.
int finiteTerminationBudget(int s, double gap, double theta);

}  // namespace codiff

#pragma once

#include <vector>

#include "codiff/types.hpp"

namespace codiff {

struct MinNormResult {
  AugVector point;
  std::vector<double> weights;  // one per vertex, convex combination
  int iterations = 0;
};

struct MinNormOptions {
  double tol = 1e-10;
  // Iteration cap is cap_factor * |S|.
  int cap_factor = 1000;
};

/// Min-norm point of conv(S) by Wolfe's algorithm.
///
/// On return `point` equals sum_q weights[q] * S[q], and every vertex q
/// satisfies <point, q> >= |point|^2 - tol. Ties in the linear minimization
/// step go to the lowest vertex index, so the result is a deterministic
/// function of the vertex order.
///
/// Throws NonFinite on NaN/inf input and NoConvergence when the iteration
/// cap is hit.
MinNormResult minNormPoint(const VertexSet& s, const MinNormOptions& opts = {});

/// min_q <point, q> - |point|^2 over the vertices; nonnegative at the optimum.
double wolfeResidual(const VertexSet& s, const AugVector& point);

}  // namespace codiff

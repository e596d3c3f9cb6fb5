#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <utility>
#include <vector>

#include "codiff/types.hpp"

namespace codiff {

/// Value-and-gradient callback of a smooth convex function. When `grad` is
/// non-null it must be filled with the gradient at x.
using ValueGrad = std::function<double(const Vector& x, Vector* grad)>;

/// Hypodifferential oracle returning a vertex set with max a = 0.
using HypodiffOracle = std::function<VertexSet(const Vector& x)>;

/// Convex function with a hypodifferential mapping, assembled from smooth
/// atoms by nonnegative sums and pointwise maxima.
class ConvexFn {
 public:
  static ConvexFn smooth(int d, ValueGrad fn, double lipschitz_grad);
  static ConvexFn sum(std::vector<double> weights, std::vector<ConvexFn> children);
  static ConvexFn max(std::vector<ConvexFn> children);
  /// Caller-supplied hypodifferential; no structure is assumed.
  static ConvexFn custom(int d, std::function<double(const Vector&)> value,
                         HypodiffOracle hypodiff, double lipschitz = 0.0);

  int dim() const;
  double value(const Vector& x) const;
  VertexSet hypodiff(const Vector& x) const;

  /// Lipschitz constant of the hypodifferential approximation implied by the
  /// structure: sum |lambda_m| L_m for sums, max L_m for maxima.
  double lipschitzBound() const;

 private:
  struct Node;
  explicit ConvexFn(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;

  friend VertexSet hypoSum(const std::vector<std::pair<double, ConvexFn>>&, const Vector&);
  friend VertexSet hypoMax(const std::vector<ConvexFn>&, const Vector&);
};

/// {(0, grad f(x))}. Throws NonFinite on a NaN/inf gradient.
VertexSet hypoSmooth(const ValueGrad& fn, const Vector& x);

/// Minkowski sum of lambda_m * hypodiff f_m(x); lambda_m >= 0.
VertexSet hypoSum(const std::vector<std::pair<double, ConvexFn>>& children, const Vector& x);

/// co{ (f_m(x) - u(x), 0) + hypodiff f_m(x) }, u = max_m f_m.
VertexSet hypoMax(const std::vector<ConvexFn>& children, const Vector& x);

// ---------------------------------------------------------------------------
// Sampling checks for the assumptions behind the MHD rate estimate.

struct AmenabilityReport {
  /// max over pairs and vertices of a + <v, y - x> - (f(y) - f(x)).
  double worst_violation = -std::numeric_limits<double>::infinity();
  Vector worst_x;
  Vector worst_y;
  std::size_t pairs = 0;
  bool holds = true;
};

/// Checks f(y) - f(x) >= a + <v, y - x> - tol for every (x, y) drawn from
/// the two sample lists (all combinations) and every hypodifferential
/// vertex (a, v) at x.
AmenabilityReport checkAmenable(const ConvexFn& f, const std::vector<Vector>& xs,
                                const std::vector<Vector>& ys, double tol);

struct LipschitzReport {
  /// max over pairs of |remainder| - (L/2)|y - x|^2.
  double worst_excess = -std::numeric_limits<double>::infinity();
  /// max over pairs of |remainder| / ((1/2)|y - x|^2): an empirical L.
  double worst_ratio = 0.0;
  std::size_t pairs = 0;
  bool holds = true;
};

/// Checks |f(y) - f(x) - max_{(a,v)} (a + <v, y - x>)| <= (L/2)|y - x|^2 + tol
/// on the given pairs.
LipschitzReport checkLipschitzApprox(const ConvexFn& f, double L,
                                     const std::vector<std::pair<Vector, Vector>>& pairs,
                                     double tol);

/// Axis-aligned box used as the region C of the checks.
struct Box {
  Vector lo;
  Vector hi;
};

class Rng;

/// `count` uniform samples from the box.
std::vector<Vector> sampleBox(const Box& box, std::size_t count, Rng& rng);

/// Largest relative discrepancy between the analytic gradient and central
/// differences with the given step.
double gradientCheck(const ValueGrad& fn, const Vector& x, double step = 1e-6);

}  // namespace codiff

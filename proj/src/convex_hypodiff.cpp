#include "codiff/convex_hypodiff.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

#include "codiff/pa_function.hpp"
#include "codiff/random.hpp"

namespace codiff {

namespace {

constexpr double kMergeTol = 1e-12;

struct SmoothNode {
  int d;
  ValueGrad fn;
  double lipschitz;
};

struct SumNode {
  std::vector<double> weights;
  std::vector<ConvexFn> children;
};

struct MaxNode {
  std::vector<ConvexFn> children;
};

struct CustomNode {
  int d;
  std::function<double(const Vector&)> value;
  HypodiffOracle hypodiff;
  double lipschitz;
};

}  // namespace

struct ConvexFn::Node {
  std::variant<SmoothNode, SumNode, MaxNode, CustomNode> body;
};

ConvexFn ConvexFn::smooth(int d, ValueGrad fn, double lipschitz_grad) {
  if (d < 1) throw InvalidArgument("ConvexFn::smooth: dimension must be at least 1");
  if (!fn) throw InvalidArgument("ConvexFn::smooth: empty callback");
  return ConvexFn(std::make_shared<const Node>(Node{SmoothNode{d, std::move(fn), lipschitz_grad}}));
}

ConvexFn ConvexFn::sum(std::vector<double> weights, std::vector<ConvexFn> children) {
  if (children.empty() || weights.size() != children.size()) {
    throw InvalidArgument("ConvexFn::sum: need one nonnegative weight per child");
  }
  for (double w : weights) {
    if (!(w >= 0.0)) throw InvalidArgument("ConvexFn::sum: weights must be nonnegative");
  }
  for (const auto& c : children) {
    if (c.dim() != children.front().dim()) {
      throw DimensionMismatch("ConvexFn::sum: children of different dimension");
    }
  }
  return ConvexFn(
      std::make_shared<const Node>(Node{SumNode{std::move(weights), std::move(children)}}));
}

ConvexFn ConvexFn::max(std::vector<ConvexFn> children) {
  if (children.empty()) throw InvalidArgument("ConvexFn::max: needs at least one child");
  for (const auto& c : children) {
    if (c.dim() != children.front().dim()) {
      throw DimensionMismatch("ConvexFn::max: children of different dimension");
    }
  }
  return ConvexFn(std::make_shared<const Node>(Node{MaxNode{std::move(children)}}));
}

ConvexFn ConvexFn::custom(int d, std::function<double(const Vector&)> value,
                          HypodiffOracle hypodiff, double lipschitz) {
  if (d < 1) throw InvalidArgument("ConvexFn::custom: dimension must be at least 1");
  return ConvexFn(std::make_shared<const Node>(
      Node{CustomNode{d, std::move(value), std::move(hypodiff), lipschitz}}));
}

int ConvexFn::dim() const {
  return std::visit(
      [](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SmoothNode> || std::is_same_v<T, CustomNode>) {
          return n.d;
        } else {
          return n.children.front().dim();
        }
      },
      node_->body);
}

double ConvexFn::value(const Vector& x) const {
  requireDim(x, dim(), "ConvexFn::value");
  return std::visit(
      [&](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SmoothNode>) {
          return n.fn(x, nullptr);
        } else if constexpr (std::is_same_v<T, SumNode>) {
          double s = 0.0;
          for (std::size_t m = 0; m < n.children.size(); ++m) {
            s += n.weights[m] * n.children[m].value(x);
          }
          return s;
        } else if constexpr (std::is_same_v<T, MaxNode>) {
          double best = -std::numeric_limits<double>::infinity();
          for (const auto& c : n.children) best = std::max(best, c.value(x));
          return best;
        } else {
          return n.value(x);
        }
      },
      node_->body);
}

VertexSet ConvexFn::hypodiff(const Vector& x) const {
  requireDim(x, dim(), "ConvexFn::hypodiff");
  return std::visit(
      [&](const auto& n) -> VertexSet {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SmoothNode>) {
          return hypoSmooth(n.fn, x);
        } else if constexpr (std::is_same_v<T, SumNode>) {
          std::vector<std::pair<double, ConvexFn>> children;
          for (std::size_t m = 0; m < n.children.size(); ++m) {
            children.emplace_back(n.weights[m], n.children[m]);
          }
          return hypoSum(children, x);
        } else if constexpr (std::is_same_v<T, MaxNode>) {
          return hypoMax(n.children, x);
        } else {
          return n.hypodiff(x);
        }
      },
      node_->body);
}

double ConvexFn::lipschitzBound() const {
  return std::visit(
      [](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SmoothNode> || std::is_same_v<T, CustomNode>) {
          return n.lipschitz;
        } else if constexpr (std::is_same_v<T, SumNode>) {
          double s = 0.0;
          for (std::size_t m = 0; m < n.children.size(); ++m) {
            s += std::abs(n.weights[m]) * n.children[m].lipschitzBound();
          }
          return s;
        } else {
          double best = 0.0;
          for (const auto& c : n.children) best = std::max(best, c.lipschitzBound());
          return best;
        }
      },
      node_->body);
}

VertexSet hypoSmooth(const ValueGrad& fn, const Vector& x) {
  Vector grad(x.size());
  fn(x, &grad);
  if (!grad.allFinite()) throw NonFinite("hypoSmooth: gradient has NaN/inf entries");
  return VertexSet({AugVector(0.0, grad)});
}

VertexSet hypoSum(const std::vector<std::pair<double, ConvexFn>>& children, const Vector& x) {
  if (children.empty()) throw InvalidArgument("hypoSum: no children");
  const int d = children.front().second.dim();
  std::vector<AugVector> acc{AugVector(0.0, Vector::Zero(d))};
  for (const auto& [lambda, child] : children) {
    if (child.dim() != d) throw DimensionMismatch("hypoSum: children of different dimension");
    if (!(lambda >= 0.0)) throw InvalidArgument("hypoSum: weights must be nonnegative");
    const VertexSet h = child.hypodiff(x);
    std::vector<AugVector> next;
    next.reserve(acc.size() * h.size());
    for (const auto& p : acc) {
      for (const auto& q : h) next.push_back(p + lambda * q);
    }
    acc = mergeDuplicates(next, kMergeTol);
  }
  return VertexSet(std::move(acc));
}

VertexSet hypoMax(const std::vector<ConvexFn>& children, const Vector& x) {
  if (children.empty()) throw InvalidArgument("hypoMax: no children");
  const int d = children.front().dim();
  std::vector<double> values;
  values.reserve(children.size());
  for (const auto& c : children) {
    if (c.dim() != d) throw DimensionMismatch("hypoMax: children of different dimension");
    values.push_back(c.value(x));
  }
  const double u = *std::max_element(values.begin(), values.end());
  std::vector<AugVector> out;
  for (std::size_t m = 0; m < children.size(); ++m) {
    const VertexSet h = children[m].hypodiff(x);
    for (const auto& q : h) out.emplace_back(values[m] - u + q.a, q.v);
  }
  return VertexSet(mergeDuplicates(out, kMergeTol));
}

AmenabilityReport checkAmenable(const ConvexFn& f, const std::vector<Vector>& xs,
                                const std::vector<Vector>& ys, double tol) {
  AmenabilityReport report;
  std::vector<double> fy;
  fy.reserve(ys.size());
  for (const auto& y : ys) fy.push_back(f.value(y));
  for (const auto& x : xs) {
    const double fx = f.value(x);
    const VertexSet h = f.hypodiff(x);
    for (std::size_t k = 0; k < ys.size(); ++k) {
      const Vector dy = ys[k] - x;
      double model = -std::numeric_limits<double>::infinity();
      for (const auto& p : h) model = std::max(model, p.a + p.v.dot(dy));
      const double violation = model - (fy[k] - fx);
      if (violation > report.worst_violation) {
        report.worst_violation = violation;
        report.worst_x = x;
        report.worst_y = ys[k];
      }
      ++report.pairs;
    }
  }
  report.holds = report.worst_violation <= tol;
  return report;
}

LipschitzReport checkLipschitzApprox(const ConvexFn& f, double L,
                                     const std::vector<std::pair<Vector, Vector>>& pairs,
                                     double tol) {
  if (!(L > 0.0)) throw InvalidArgument("checkLipschitzApprox: L must be positive");
  LipschitzReport report;
  for (const auto& [x, y] : pairs) {
    const Vector dy = y - x;
    const VertexSet h = f.hypodiff(x);
    double model = -std::numeric_limits<double>::infinity();
    for (const auto& p : h) model = std::max(model, p.a + p.v.dot(dy));
    const double remainder = std::abs(f.value(y) - f.value(x) - model);
    const double half = 0.5 * dy.squaredNorm();
    report.worst_excess = std::max(report.worst_excess, remainder - L * half);
    if (half > 0.0) report.worst_ratio = std::max(report.worst_ratio, remainder / half);
    ++report.pairs;
  }
  report.holds = report.worst_excess <= tol;
  return report;
}

std::vector<Vector> sampleBox(const Box& box, std::size_t count, Rng& rng) {
  if (box.lo.size() != box.hi.size()) throw DimensionMismatch("sampleBox: bad box");
  std::vector<Vector> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    Vector x(box.lo.size());
    for (int k = 0; k < x.size(); ++k) x(k) = rng.uniform(box.lo(k), box.hi(k));
    out.push_back(std::move(x));
  }
  return out;
}

double gradientCheck(const ValueGrad& fn, const Vector& x, double step) {
  Vector grad(x.size());
  fn(x, &grad);
  double worst = 0.0;
  for (int k = 0; k < x.size(); ++k) {
    Vector xp = x;
    Vector xm = x;
    xp(k) += step;
    xm(k) -= step;
    const double fd = (fn(xp, nullptr) - fn(xm, nullptr)) / (2.0 * step);
    const double scale = std::max(1.0, std::abs(grad(k)));
    worst = std::max(worst, std::abs(fd - grad(k)) / scale);
  }
  return worst;
}

}  // namespace codiff

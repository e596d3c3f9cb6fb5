#include "codiff/minnorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/SVD>

namespace codiff {

namespace {

constexpr double kSingularCutoff = 1e-12;

Eigen::MatrixXd packColumns(const VertexSet& s) {
  const int n = s.dim() + 1;
  Eigen::MatrixXd pts(n, static_cast<Eigen::Index>(s.size()));
  for (std::size_t q = 0; q < s.size(); ++q) {
    pts(0, q) = s[q].a;
    pts.col(q).tail(n - 1) = s[q].v;
  }
  return pts;
}

// Affine minimizer of |sum_i mu_i p_i| subject to sum_i mu_i = 1 over the
// corral columns. Solved as least squares in the differences p_i - p_0 so
// that affinely dependent corrals still yield a (minimum-norm) solution.
Eigen::VectorXd affineMinimizer(const Eigen::MatrixXd& pts,
                                const std::vector<int>& corral) {
  const auto k = static_cast<Eigen::Index>(corral.size());
  Eigen::VectorXd mu(k);
  if (k == 1) {
    mu(0) = 1.0;
    return mu;
  }
  const Eigen::VectorXd p0 = pts.col(corral[0]);
  Eigen::MatrixXd diffs(pts.rows(), k - 1);
  for (Eigen::Index i = 1; i < k; ++i) diffs.col(i - 1) = pts.col(corral[i]) - p0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(diffs, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(kSingularCutoff);
  const Eigen::VectorXd t = svd.solve(-p0);
  mu(0) = 1.0 - t.sum();
  mu.tail(k - 1) = t;
  return mu;
}

}  // namespace

MinNormResult minNormPoint(const VertexSet& s, const MinNormOptions& opts) {
  if (s.empty()) throw InvalidArgument("minNormPoint: empty vertex set");
  if (!(opts.tol > 0.0)) throw InvalidArgument("minNormPoint: tol must be positive");
  for (const auto& p : s) {
    if (!p.allFinite()) throw NonFinite("minNormPoint: vertex with NaN/inf entry");
  }

  const Eigen::MatrixXd pts = packColumns(s);
  const int m = static_cast<int>(s.size());
  const long cap = static_cast<long>(opts.cap_factor) * m;

  int start = 0;
  double best = pts.col(0).squaredNorm();
  for (int q = 1; q < m; ++q) {
    const double nq = pts.col(q).squaredNorm();
    if (nq < best) {
      best = nq;
      start = q;
    }
  }

  std::vector<int> corral{start};
  std::vector<double> lambda{1.0};
  Eigen::VectorXd x = pts.col(start);
  long iterations = 0;

  auto recompute = [&]() {
    x.setZero();
    for (std::size_t i = 0; i < corral.size(); ++i) x += lambda[i] * pts.col(corral[i]);
  };

  while (true) {
    const double xx = x.squaredNorm();
    if (xx == 0.0) break;
    const Eigen::VectorXd inner = pts.transpose() * x;
    int q = 0;
    for (int i = 1; i < m; ++i) {
      if (inner(i) < inner(q)) q = i;
    }
    if (inner(q) >= xx - opts.tol) break;
    // A vertex already in the corral cannot improve the affine minimizer;
    // seeing it again means the remaining gap is rounding noise.
    if (std::find(corral.begin(), corral.end(), q) != corral.end()) break;

    corral.push_back(q);
    lambda.push_back(0.0);

    while (true) {
      if (++iterations > cap) {
        throw NoConvergence("minNormPoint: iteration cap of " + std::to_string(cap) +
                            " exceeded");
      }
      const Eigen::VectorXd mu = affineMinimizer(pts, corral);
      if ((mu.array() > 0.0).all()) {
        for (std::size_t i = 0; i < corral.size(); ++i) lambda[i] = mu(i);
        recompute();
        break;
      }
      // Move from lambda towards mu until the first weight hits zero.
      double theta = 1.0;
      std::size_t leaving = 0;
      for (std::size_t i = 0; i < corral.size(); ++i) {
        if (mu(i) <= 0.0) {
          const double denom = lambda[i] - mu(i);
          const double ratio = denom > 0.0 ? lambda[i] / denom : 0.0;
          if (ratio < theta) {
            theta = ratio;
            leaving = i;
          }
        }
      }
      for (std::size_t i = 0; i < corral.size(); ++i) {
        lambda[i] = (1.0 - theta) * lambda[i] + theta * mu(i);
      }
      lambda[leaving] = 0.0;
      std::vector<int> keptIdx;
      std::vector<double> keptW;
      for (std::size_t i = 0; i < corral.size(); ++i) {
        if (lambda[i] > 0.0) {
          keptIdx.push_back(corral[i]);
          keptW.push_back(lambda[i]);
        }
      }
      double total = 0.0;
      for (double w : keptW) total += w;
      for (double& w : keptW) w /= total;
      corral = std::move(keptIdx);
      lambda = std::move(keptW);
      recompute();
    }
  }

  MinNormResult out;
  out.weights.assign(static_cast<std::size_t>(m), 0.0);
  for (std::size_t i = 0; i < corral.size(); ++i) out.weights[corral[i]] = lambda[i];
  Eigen::VectorXd point = Eigen::VectorXd::Zero(pts.rows());
  for (int q = 0; q < m; ++q) {
    if (out.weights[q] != 0.0) point += out.weights[q] * pts.col(q);
  }
  out.point = AugVector(point(0), point.tail(point.size() - 1));
  out.iterations = static_cast<int>(iterations);
  return out;
}

double wolfeResidual(const VertexSet& s, const AugVector& point) {
  const double pp = point.squaredNorm();
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& q : s) worst = std::min(worst, point.dot(q) - pp);
  return worst;
}

}  // namespace codiff

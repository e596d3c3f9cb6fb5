#include "codiff/polyhedral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "codiff/minnorm.hpp"
#include "codiff/simplex.hpp"

namespace codiff {

double maxAffine(const std::vector<AugVector>& pieces, const Vector& x) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : pieces) best = std::max(best, p.a + p.v.dot(x));
  return best;
}

LPOutcome minMaxAffine(const std::vector<AugVector>& pieces, int d) {
  if (pieces.empty()) throw InvalidArgument("minMaxAffine: no pieces");
  const int k = static_cast<int>(pieces.size());
  for (const auto& p : pieces) {
    if (p.dim() != d) throw DimensionMismatch("minMaxAffine: piece of wrong dimension");
  }

  // Columns: x+ (d), x- (d), t+, t-, slacks (k).
  //   <v_i, x+ - x-> - (t+ - t-) + s_i = -a_i
  const int n = 2 * d + 2 + k;
  StandardFormLP lp;
  lp.A = Eigen::MatrixXd::Zero(k, n);
  lp.b = Eigen::VectorXd(k);
  lp.c = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < k; ++i) {
    lp.A.row(i).segment(0, d) = pieces[i].v.transpose();
    lp.A.row(i).segment(d, d) = -pieces[i].v.transpose();
    lp.A(i, 2 * d) = -1.0;
    lp.A(i, 2 * d + 1) = 1.0;
    lp.A(i, 2 * d + 2 + i) = 1.0;
    lp.b(i) = -pieces[i].a;
  }
  lp.c(2 * d) = 1.0;
  lp.c(2 * d + 1) = -1.0;

  const SimplexResult res = solveSimplex(lp);
  LPOutcome out;
  if (res.status == SimplexResult::Status::Unbounded) {
    out.status = LPOutcome::Status::UnboundedBelow;
    out.ray = res.ray.segment(0, d) - res.ray.segment(d, d);
    const double n2 = out.ray.norm();
    if (n2 > 0.0) out.ray /= n2;
    return out;
  }
  if (res.status == SimplexResult::Status::Infeasible) {
    // t can always be raised above every piece, so this is numerical trouble.
    throw Degenerate("minMaxAffine: epigraph LP reported infeasible");
  }
  out.status = LPOutcome::Status::Bounded;
  out.argmin = res.x.segment(0, d) - res.x.segment(d, d);
  out.value = maxAffine(pieces, out.argmin);
  return out;
}

NonnegVerdict classifyNonnegative(const std::vector<AugVector>& pieces, double tol) {
  NonnegVerdict verdict;
  const MinNormResult mn = minNormPoint(VertexSet(pieces));
  verdict.min_norm = mn.point;
  const int d = mn.point.dim();
  const double a0 = mn.point.a;
  const Vector& v0 = mn.point.v;

  const LPOutcome lp = minMaxAffine(pieces, d);
  if (!lp.bounded()) {
    verdict.kind = NonnegVerdict::Kind::UnboundedBelow;
    // With a0 = 0 and v0 != 0 the function decreases along -v0 at rate |v0|^2.
    if (std::abs(a0) <= tol && v0.norm() > tol) {
      verdict.direction = -v0;
    } else {
      verdict.direction = lp.ray;
    }
    return verdict;
  }
  if (a0 >= -tol) {
    verdict.kind = NonnegVerdict::Kind::Nonnegative;
    return verdict;
  }
  verdict.kind = NonnegVerdict::Kind::AttainsNegative;
  // x = v0 / a0 gives max_i <= -|(a0, v0)|^2 / |a0| < 0.
  Vector x = v0 / a0;
  if (maxAffine(pieces, x) >= 0.0 && lp.value < maxAffine(pieces, x)) x = lp.argmin;
  verdict.witness = x;
  return verdict;
}

LPOutcome paGlobalMin(const DCForm& f) {
  f.validate();
  LPOutcome best;
  best.value = std::numeric_limits<double>::infinity();
  std::vector<AugVector> pieces(f.plus.size());
  for (std::size_t j = 0; j < f.minus.size(); ++j) {
    const auto& m = f.minus[j];
    for (std::size_t i = 0; i < f.plus.size(); ++i) pieces[i] = f.plus[i] + m;
    LPOutcome piece = minMaxAffine(pieces, f.d);
    if (!piece.bounded()) {
      piece.piece = static_cast<int>(j);
      return piece;
    }
    const double value = eval(f, piece.argmin);
    if (value < best.value) {
      best = piece;
      best.value = value;
      best.piece = static_cast<int>(j);
    }
  }
  return best;
}

}  // namespace codiff

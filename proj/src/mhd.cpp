#include "codiff/mhd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace codiff {

void MHDConfig::validate() const {
  if (!(sigma > 0.0 && sigma < 1.0)) throw InvalidArgument("MHDConfig: sigma must be in (0,1)");
  if (!(gamma > 0.0 && gamma < 1.0)) throw InvalidArgument("MHDConfig: gamma must be in (0,1)");
  if (!(stop_tol > 0.0)) throw InvalidArgument("MHDConfig: stop_tol must be positive");
  if (max_iter < 0) throw InvalidArgument("MHDConfig: max_iter must be nonnegative");
  if (armijo_max_k < 0) throw InvalidArgument("MHDConfig: armijo_max_k must be nonnegative");
}

const char* toString(MHDTrace::Status s) {
  switch (s) {
    case MHDTrace::Status::Stationary:
      return "Stationary";
    case MHDTrace::Status::IterLimit:
      return "IterLimit";
    case MHDTrace::Status::PrecisionLimit:
      return "PrecisionLimit";
  }
  return "?";
}

namespace {

ArmijoResult armijoSearch(const ConvexFn& f, const Vector& x, double fx, const Vector& v,
                          double norm2, const MHDConfig& cfg) {
  double alpha = 1.0;
  for (int k = 0; k <= cfg.armijo_max_k; ++k) {
    const double trial = f.value(x - alpha * v);
    if (trial - fx <= -alpha * cfg.sigma * norm2) return {alpha, k};
    alpha *= cfg.gamma;
  }
  throw ArmijoFailure("armijoStep: no acceptable step up to gamma^" +
                      std::to_string(cfg.armijo_max_k));
}

bool belowResolution(double fx, double norm2, const MHDConfig& cfg) {
  const double eps = std::numeric_limits<double>::epsilon();
  return cfg.sigma * norm2 <= 1e3 * eps * std::max(1.0, std::abs(fx));
}

}  // namespace

ArmijoResult armijoStep(const ConvexFn& f, const Vector& x, const Vector& v, double norm2,
                        const MHDConfig& cfg) {
  cfg.validate();
  if (!(norm2 > 0.0)) throw InvalidArgument("armijoStep: norm2 must be positive");
  return armijoSearch(f, x, f.value(x), v, norm2, cfg);
}

MHDTrace mhdRun(const ConvexFn& f, const Vector& x0, const MHDConfig& cfg) {
  cfg.validate();
  requireDim(x0, f.dim(), "mhdRun");
  MHDTrace trace;
  Vector x = x0;
  double fx = f.value(x);
  if (!std::isfinite(fx)) throw NonFinite("mhdRun: f(x0) is not finite");

  for (int n = 0;; ++n) {
    const VertexSet h = f.hypodiff(x);
    const MinNormResult mn = minNormPoint(h, cfg.minnorm);
    MHDStep rec;
    rec.x = x;
    rec.f = fx;
    rec.direction = mn.point;
    rec.norm = mn.point.norm();
    for (const auto& p : h) rec.max_abs_a = std::max(rec.max_abs_a, std::abs(p.a));

    if (rec.norm <= cfg.stop_tol) {
      trace.steps.push_back(std::move(rec));
      trace.status = MHDTrace::Status::Stationary;
      return trace;
    }
    if (n >= cfg.max_iter) {
      trace.steps.push_back(std::move(rec));
      trace.status = MHDTrace::Status::IterLimit;
      return trace;
    }
    const double norm2 = mn.point.squaredNorm();
    ArmijoResult step;
    try {
      step = armijoSearch(f, x, fx, mn.point.v, norm2, cfg);
    } catch (const ArmijoFailure&) {
      if (!belowResolution(fx, norm2, cfg)) throw;
      trace.steps.push_back(std::move(rec));
      trace.status = MHDTrace::Status::PrecisionLimit;
      return trace;
    }
    rec.alpha = step.alpha;
    rec.k = step.k;
    trace.steps.push_back(rec);
    x = x - step.alpha * mn.point.v;
    fx = f.value(x);
  }
}

}  // namespace codiff

#include "codiff/mgcd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace codiff {

namespace {

void checkIndex(const DCForm& f, int j, const char* what) {
  if (j < 0 || j >= static_cast<int>(f.minus.size())) {
    throw IndexOutOfRange(std::string(what) + ": piece index " + std::to_string(j) +
                          " out of range");
  }
}

bool signalsUnbounded(const AugVector& p, double tol) {
  return std::abs(p.a) <= tol && p.v.norm() > std::sqrt(tol);
}

double absoluteTol(const GlobalConfig& cfg, double f0) {
  return cfg.tol * std::max(1.0, std::abs(f0));
}

struct Line {
  double c;  // intercept
  double m;  // slope
};

// Breakpoints in (0, inf) of the upper envelope of the lines.
void upperEnvelopeBreaks(std::vector<Line> lines, std::vector<double>& out) {
  std::sort(lines.begin(), lines.end(), [](const Line& p, const Line& q) {
    return p.m < q.m || (p.m == q.m && p.c < q.c);
  });
  std::vector<Line> hull;
  auto cross = [](const Line& p, const Line& q) { return (p.c - q.c) / (q.m - p.m); };
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i + 1 < lines.size() && lines[i + 1].m == lines[i].m) continue;  // keep max intercept
    const Line& l = lines[i];
    while (hull.size() >= 2 &&
           cross(hull[hull.size() - 2], l) <= cross(hull[hull.size() - 2], hull.back())) {
      hull.pop_back();
    }
    hull.push_back(l);
  }
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    const double t = cross(hull[k], hull[k + 1]);
    if (t > 0.0 && std::isfinite(t)) out.push_back(t);
  }
}

GlobalIteration startIteration(const DCForm& f, const Vector& x) {
  GlobalIteration it;
  it.x = x;
  it.f = eval(f, x);
  return it;
}

}  // namespace

const char* toString(GlobalRun::Status s) {
  switch (s) {
    case GlobalRun::Status::GlobalMin:
      return "GlobalMin";
    case GlobalRun::Status::UnboundedBelow:
      return "UnboundedBelow";
    case GlobalRun::Status::IterLimit:
      return "IterLimit";
    case GlobalRun::Status::Stationary:
      return "Stationary";
  }
  return "?";
}

void GlobalConfig::validate() const {
  if (!(tol > 0.0)) throw InvalidArgument("GlobalConfig: tol must be positive");
  if (max_iter < 0) throw InvalidArgument("GlobalConfig: max_iter must be nonnegative");
  if (!(mu >= 0.0)) throw InvalidArgument("GlobalConfig: mu must be nonnegative");
}

AugVector hyperGrad(const DCForm& f, const Vector& x, int j) {
  checkIndex(f, j, "hyperGrad");
  requireDim(x, f.d, "hyperGrad");
  const auto& m = f.minus[j];
  return {(m.a + m.v.dot(x)) - f.concavePart(x), m.v};
}

MinNormResult projectPiece(const GlobalCodiff& gc, int j, const MinNormOptions& opts) {
  if (j < 0 || j >= static_cast<int>(gc.hyper.size())) {
    throw IndexOutOfRange("projectPiece: piece index " + std::to_string(j) + " out of range");
  }
  return minNormPoint(gc.hypo.translated(gc.hyper[j]), opts);
}

MinNormResult projectPiece(const DCForm& f, const Vector& x, int j, const MinNormOptions& opts) {
  checkIndex(f, j, "projectPiece");
  return projectPiece(globalCodiff(f, x), j, opts);
}

Certificate checkGlobalOpt(const DCForm& f, const Vector& x, double tol) {
  const GlobalCodiff gc = globalCodiff(f, x);
  Certificate cert;
  cert.point = x;
  cert.tol = tol;
  for (int j = 0; j < static_cast<int>(gc.hyper.size()); ++j) {
    cert.a.push_back(projectPiece(gc, j).point.a);
    if (cert.witness < 0 || cert.a[j] < cert.a[cert.witness]) cert.witness = j;
  }
  cert.holds = cert.a[cert.witness] >= -tol;
  return cert;
}

bool checkInfStationary(const DCForm& f, const Vector& x, double tol) {
  const GlobalCodiff gc = globalCodiff(f, x);
  for (int j = 0; j < static_cast<int>(gc.hyper.size()); ++j) {
    if (gc.hyper[j].a > tol) continue;
    if (projectPiece(gc, j).point.norm() > tol) return false;
  }
  return true;
}

LineSearchResult lineSearchPA(const DCForm& f, const Vector& x, const Vector& dir) {
  f.validate();
  requireDim(x, f.d, "lineSearchPA");
  requireDim(dir, f.d, "lineSearchPA");
  if (dir.norm() == 0.0) throw InvalidArgument("lineSearchPA: zero direction");

  std::vector<Line> maxLines;
  std::vector<Line> negMinLines;  // min_j L_j = -max_j (-L_j)
  double maxSlope = -std::numeric_limits<double>::infinity();
  double minSlope = std::numeric_limits<double>::infinity();
  double scale = 1.0;
  for (const auto& p : f.plus) {
    const Line l{p.a + p.v.dot(x), -p.v.dot(dir)};
    maxLines.push_back(l);
    maxSlope = std::max(maxSlope, l.m);
    scale = std::max(scale, std::abs(l.m));
  }
  for (const auto& q : f.minus) {
    const Line l{q.a + q.v.dot(x), -q.v.dot(dir)};
    negMinLines.push_back({-l.c, -l.m});
    minSlope = std::min(minSlope, l.m);
    scale = std::max(scale, std::abs(l.m));
  }

  LineSearchResult res;
  if (maxSlope + minSlope < -1e-12 * scale) {
    res.unbounded = true;
    return res;
  }

  std::vector<double> breaks;
  upperEnvelopeBreaks(maxLines, breaks);
  upperEnvelopeBreaks(negMinLines, breaks);
  std::sort(breaks.begin(), breaks.end());

  res.alpha = 0.0;
  res.value = eval(f, x);
  for (double t : breaks) {
    const double value = eval(f, x - t * dir);
    if (value < res.value) {
      res.value = value;
      res.alpha = t;
    }
  }
  return res;
}

GlobalRun mgcdRun(const DCForm& f, const Vector& x0, const GlobalConfig& cfg) {
  f.validate();
  cfg.validate();
  requireDim(x0, f.d, "mgcdRun");
  GlobalRun run;
  run.tol = absoluteTol(cfg, eval(f, x0));
  const double tol = run.tol;

  std::vector<int> active(f.minus.size());
  std::iota(active.begin(), active.end(), 0);
  std::vector<int> discarded;
  GlobalCodiff gc = globalCodiff(f, x0);

  for (int n = 0;; ++n) {
    GlobalIteration it = startIteration(f, gc.at);

    if (cfg.verify_discards) {
      for (int j : discarded) {
        const double a = projectPiece(gc, j, cfg.minnorm).point.a;
        if (a < -10.0 * tol) run.violations.push_back({n, j, a});
      }
    }

    for (int j : active) {
      it.projections.push_back({j, gc.hyper[j], projectPiece(gc, j, cfg.minnorm).point});
    }
    for (const auto& pr : it.projections) {
      if (signalsUnbounded(pr.p, tol)) {
        run.status = GlobalRun::Status::UnboundedBelow;
        run.ray = -pr.p.v;
        it.active_count = static_cast<int>(active.size());
        run.iterations.push_back(std::move(it));
        return run;
      }
    }

    std::vector<const PieceProjection*> remaining;
    for (const auto& pr : it.projections) {
      if (pr.p.a >= -tol) {
        run.discards.push_back({n, pr.j});
        discarded.push_back(pr.j);
      } else {
        remaining.push_back(&pr);
      }
    }
    active.clear();
    for (const auto* pr : remaining) active.push_back(pr->j);
    it.active_count = static_cast<int>(active.size());

    if (active.empty()) {
      run.status = GlobalRun::Status::GlobalMin;
      run.certificate = checkGlobalOpt(f, gc.at, tol);
      run.iterations.push_back(std::move(it));
      return run;
    }
    if (n >= cfg.max_iter) {
      run.status = GlobalRun::Status::IterLimit;
      run.iterations.push_back(std::move(it));
      return run;
    }

    const PieceProjection* best = nullptr;
    double bestValue = std::numeric_limits<double>::infinity();
    for (const auto* pr : remaining) {
      const double value = eval(f, gc.at + pr->p.v / pr->p.a);
      if (value < bestValue) {
        bestValue = value;
        best = pr;
      }
    }
    const Vector step = best->p.v / best->p.a;
    it.chosen = best->j;
    it.a_chosen = best->p.a;
    it.step_norm = step.norm();
    it.mgcd_trial = bestValue;
    const Vector next = gc.at + step;
    run.iterations.push_back(std::move(it));
    gc = translate(f, gc, next);
  }
}

GlobalRun mcdRun(const DCForm& f, const Vector& x0, const GlobalConfig& cfg) {
  f.validate();
  cfg.validate();
  requireDim(x0, f.d, "mcdRun");
  GlobalRun run;
  run.tol = absoluteTol(cfg, eval(f, x0));
  const double tol = run.tol;
  GlobalCodiff gc = globalCodiff(f, x0);
  const int J = static_cast<int>(f.minus.size());

  for (int n = 0;; ++n) {
    GlobalIteration it = startIteration(f, gc.at);
    bool allNonneg = true;
    for (int j = 0; j < J; ++j) {
      it.projections.push_back({j, gc.hyper[j], projectPiece(gc, j, cfg.minnorm).point});
      if (it.projections.back().p.a < -tol) allNonneg = false;
    }
    std::vector<const PieceProjection*> candidates;
    for (const auto& pr : it.projections) {
      if (pr.z.a <= cfg.mu) candidates.push_back(&pr);
    }
    it.active_count = static_cast<int>(candidates.size());

    for (const auto* pr : candidates) {
      if (signalsUnbounded(pr->p, tol)) {
        run.status = GlobalRun::Status::UnboundedBelow;
        run.ray = -pr->p.v;
        run.iterations.push_back(std::move(it));
        return run;
      }
    }
    if (allNonneg) {
      run.status = GlobalRun::Status::GlobalMin;
      run.certificate = checkGlobalOpt(f, gc.at, tol);
      run.iterations.push_back(std::move(it));
      return run;
    }

    for (const auto* pr : candidates) {
      if (pr->p.a >= -tol) continue;
      const double trial = eval(f, gc.at + pr->p.v / pr->p.a);
      if (std::isnan(it.mgcd_trial) || trial < it.mgcd_trial) it.mgcd_trial = trial;
    }

    const PieceProjection* best = nullptr;
    LineSearchResult bestLs;
    bestLs.value = it.f;
    for (const auto* pr : candidates) {
      if (pr->p.v.norm() == 0.0) continue;
      const LineSearchResult ls = lineSearchPA(f, gc.at, pr->p.v);
      if (ls.unbounded) {
        run.status = GlobalRun::Status::UnboundedBelow;
        run.ray = -pr->p.v;
        run.iterations.push_back(std::move(it));
        return run;
      }
      if (ls.value < bestLs.value) {
        bestLs = ls;
        best = pr;
      }
    }
    if (best == nullptr || bestLs.value >= it.f - tol) {
      run.status = GlobalRun::Status::Stationary;
      run.iterations.push_back(std::move(it));
      return run;
    }
    if (n >= cfg.max_iter) {
      run.status = GlobalRun::Status::IterLimit;
      run.iterations.push_back(std::move(it));
      return run;
    }
    const Vector step = -bestLs.alpha * best->p.v;
    it.chosen = best->j;
    it.a_chosen = best->p.a;
    it.alpha = bestLs.alpha;
    it.step_norm = step.norm();
    const Vector next = gc.at + step;
    run.iterations.push_back(std::move(it));
    gc = translate(f, gc, next);
  }
}

}  // namespace codiff

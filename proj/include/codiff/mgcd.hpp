#pragma once

#include <limits>
#include <vector>

#include "codiff/minnorm.hpp"
#include "codiff/pa_function.hpp"
#include "codiff/types.hpp"

namespace codiff {

/// z_j(x) = (b_j - concavePart(x) + <w_j, x>, w_j). Throws IndexOutOfRange.
AugVector hyperGrad(const DCForm& f, const Vector& x, int j);

/// Min-norm point of {hypo vertex + z_j} for a global codifferential.
MinNormResult projectPiece(const GlobalCodiff& gc, int j, const MinNormOptions& opts = {});
MinNormResult projectPiece(const DCForm& f, const Vector& x, int j,
                           const MinNormOptions& opts = {});

struct Certificate {
  Vector point;
  std::vector<double> a;  // a_j(point) for every j
  double tol = 0.0;
  bool holds = false;     // min_j a_j >= -tol
  int witness = -1;       // index of the smallest a_j
};

/// Global optimality test: x minimizes f iff a_j(x) >= 0 for every j.
/// Only meaningful when f is bounded below.
Certificate checkGlobalOpt(const DCForm& f, const Vector& x, double tol);

/// Necessary condition for a local minimum: every j with z_j(x).a <= tol has
/// a projection of norm <= tol.
bool checkInfStationary(const DCForm& f, const Vector& x, double tol);

struct LineSearchResult {
  bool unbounded = false;
  double alpha = 0.0;
  double value = 0.0;
};

/// Exact minimization of phi(alpha) = f(x - alpha dir) over alpha >= 0. The
/// smallest minimizing alpha is returned.
LineSearchResult lineSearchPA(const DCForm& f, const Vector& x, const Vector& dir);

struct GlobalConfig {
  double tol = 1e-9;  // relative; the absolute tolerance is tol * max(1, |f(x0)|)
  int max_iter = 10000;
  double mu = std::numeric_limits<double>::infinity();  // MCD only
  bool verify_discards = false;  // re-project discarded j at every iterate
  MinNormOptions minnorm;

  void validate() const;
};

struct PieceProjection {
  int j = 0;
  AugVector z;  // z_j(x)
  AugVector p;  // (a_j(x), v_j(x))
};

struct GlobalIteration {
  Vector x;
  double f = 0.0;
  std::vector<PieceProjection> projections;
  int active_count = 0;  // |M| after this iteration's discards (MGCD)
  int chosen = -1;       // j(n); -1 when no step was taken
  double a_chosen = 0.0;
  double step_norm = 0.0;
  double alpha = 0.0;        // MCD line search step
  double mgcd_trial = std::numeric_limits<double>::quiet_NaN();  // min_j f(x + v_j / a_j)
};

struct DiscardEvent {
  int iteration = 0;
  int j = 0;
};

struct DiscardViolation {
  int iteration = 0;
  int j = 0;
  double a = 0.0;
};

struct GlobalRun {
  enum class Status { GlobalMin, UnboundedBelow, IterLimit, Stationary };
  Status status = Status::IterLimit;
  std::vector<GlobalIteration> iterations;  // one per visited point
  std::vector<DiscardEvent> discards;
  std::vector<DiscardViolation> violations;
  Certificate certificate;  // GlobalMin
  Vector ray;               // UnboundedBelow
  double tol = 0.0;         // absolute tolerance used

  const Vector& finalPoint() const { return iterations.back().x; }
  double finalValue() const { return iterations.back().f; }
  int steps() const { return static_cast<int>(iterations.size()) - 1; }
};

const char* toString(GlobalRun::Status s);

/// Global codifferential descent with the discard rule.
GlobalRun mgcdRun(const DCForm& f, const Vector& x0, const GlobalConfig& cfg = {});

/// Codifferential descent with exact line search over the directions of all
/// j with z_j(x).a <= mu.
GlobalRun mcdRun(const DCForm& f, const Vector& x0, const GlobalConfig& cfg = {});

}  // namespace codiff

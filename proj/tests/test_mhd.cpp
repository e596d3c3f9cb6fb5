#include <gtest/gtest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "codiff/mhd.hpp"
#include "codiff/random.hpp"
#include "oracles.hpp"

namespace codiff {
namespace {

Vector scalarVec(double x) { return Vector::Constant(1, x); }

ConvexFn square() {
  return ConvexFn::smooth(
      1,
      [](const Vector& x, Vector* g) {
        if (g) *g = 2.0 * x;
        return x.squaredNorm();
      },
      2.0);
}

ConvexFn maxOfQuadratics(const std::vector<oracle::Quadratic>& qs) {
  std::vector<ConvexFn> atoms;
  for (const auto& q : qs) {
    atoms.push_back(ConvexFn::smooth(
        static_cast<int>(q.c.size()),
        [q](const Vector& x, Vector* g) {
          if (g) *g = q.grad(x);
          return q.value(x);
        },
        q.A.selfadjointView<Eigen::Lower>().eigenvalues().maxCoeff()));
  }
  return ConvexFn::max(atoms);
}

TEST(Armijo, HalfStepWithSigmaHalf) {
  MHDConfig cfg;
  cfg.sigma = 0.5;
  cfg.gamma = 0.5;
  const ArmijoResult r = armijoStep(square(), scalarVec(1), scalarVec(2), 4.0, cfg);
  EXPECT_EQ(r.alpha, 0.5);
  EXPECT_EQ(r.k, 1);
}

TEST(Armijo, HalfStepWithSigmaTenth) {
  // k = 0 lands on x = -1 where f is unchanged, so one halving is needed.
  MHDConfig cfg;
  cfg.sigma = 0.1;
  cfg.gamma = 0.5;
  const ArmijoResult r = armijoStep(square(), scalarVec(1), scalarVec(2), 4.0, cfg);
  EXPECT_EQ(r.alpha, 0.5);
  EXPECT_EQ(r.k, 1);
}

TEST(Armijo, FullStepWhenImmediatelyAccepted) {
  const ArmijoResult r = armijoStep(square(), scalarVec(1), scalarVec(1), 1.0, MHDConfig{});
  EXPECT_EQ(r.alpha, 1.0);
  EXPECT_EQ(r.k, 0);
}

TEST(Armijo, AscentDirectionFails) {
  MHDConfig cfg;
  cfg.armijo_max_k = 10;
  EXPECT_THROW(armijoStep(square(), scalarVec(1), scalarVec(-2), 4.0, cfg), ArmijoFailure);
  EXPECT_THROW(armijoStep(square(), scalarVec(1), scalarVec(2), 0.0, cfg), InvalidArgument);
}

TEST(MHDConfig, RangesAreChecked) {
  MHDConfig cfg;
  cfg.sigma = 1.0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg = MHDConfig{};
  cfg.gamma = 0.0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg = MHDConfig{};
  cfg.stop_tol = -1;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
}

TEST(MHD, SquareFromTen) {
  MHDConfig cfg;
  cfg.sigma = 0.5;
  cfg.gamma = 0.5;
  const MHDTrace t = mhdRun(square(), scalarVec(10), cfg);
  EXPECT_EQ(t.status, MHDTrace::Status::Stationary);
  EXPECT_LE(t.final().norm, cfg.stop_tol);
  EXPECT_NEAR(t.final().x(0), 0.0, 1e-8);
}

TEST(MHD, StationaryStartTakesNoSteps) {
  const MHDTrace t = mhdRun(square(), scalarVec(0));
  EXPECT_EQ(t.status, MHDTrace::Status::Stationary);
  EXPECT_EQ(t.iterations(), 0);
}

TEST(MHD, IterLimitIsReported) {
  MHDConfig cfg;
  cfg.max_iter = 2;
  Rng rng(1);
  std::vector<oracle::Quadratic> qs;
  for (int i = 0; i < 3; ++i) qs.push_back(oracle::randomQuadratic(rng, 4, 1, 20));
  const MHDTrace t = mhdRun(maxOfQuadratics(qs), 10.0 * Vector::Ones(4), cfg);
  EXPECT_EQ(t.status, MHDTrace::Status::IterLimit);
  EXPECT_EQ(t.iterations(), 2);
}

TEST(MHD, MaxOfQuadraticsWithinCertifiedGap) {
  // The min-norm point (a, v) at x bounds f(x) - f* by |(a, v)| (1 + |x - x*|).
  for (int inst = 0; inst < 5; ++inst) {
    Rng rng(100 + inst);
    std::vector<oracle::Quadratic> qs;
    for (int i = 0; i < 5; ++i) qs.push_back(oracle::randomQuadratic(rng, 4, 1, 6));
    const ConvexFn f = maxOfQuadratics(qs);
    const MHDTrace t = mhdRun(f, 3.0 * rng.normalVector(4));
    const oracle::MaxQuadMin opt = oracle::minMaxOfQuadratics(qs);
    ASSERT_LE(opt.upper - opt.lower, 1e-6);
    const double gap = t.final().f - opt.lower;
    EXPECT_GE(gap, -1e-9) << "instance " << inst;
    EXPECT_LE(gap, t.final().norm * (1.0 + (t.final().x - opt.x).norm()) + 1e-6)
        << "instance " << inst;
    EXPECT_LE(gap, 1e-3) << "instance " << inst;
  }
}

TEST(MHD, SmoothMinimumIsReachedAccurately) {
  Rng rng(3);
  const oracle::Quadratic q = oracle::randomQuadratic(rng, 4, 1, 6);
  const MHDTrace t = mhdRun(maxOfQuadratics({q}), 5.0 * rng.normalVector(4));
  EXPECT_EQ(t.status, MHDTrace::Status::Stationary);
  EXPECT_NEAR(t.final().f, q.e, 1e-12);
  EXPECT_LE((t.final().x - q.c).norm(), 1e-8);
}

TEST(MHD, MonotoneSufficientDescent) {
  Rng rng(55);
  std::vector<oracle::Quadratic> qs;
  for (int i = 0; i < 4; ++i) qs.push_back(oracle::randomQuadratic(rng, 3, 1, 8));
  const MHDConfig cfg;
  const MHDTrace t = mhdRun(maxOfQuadratics(qs), 5.0 * rng.normalVector(3), cfg);
  ASSERT_GT(t.iterations(), 1);
  for (int n = 0; n < t.iterations(); ++n) {
    const auto& s = t.steps[n];
    EXPECT_LE(t.steps[n + 1].f - s.f, -s.alpha * cfg.sigma * s.norm * s.norm);
  }
}

}  // namespace
}  // namespace codiff

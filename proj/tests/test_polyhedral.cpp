#include <gtest/gtest.h>

#include "codiff/generator.hpp"
#include "codiff/minnorm.hpp"
#include "codiff/polyhedral.hpp"
#include "codiff/random.hpp"
#include "codiff/simplex.hpp"
#include "oracles.hpp"

namespace codiff {
namespace {

Vector vec(std::initializer_list<double> v) {
  Vector w(static_cast<int>(v.size()));
  int k = 0;
  for (double x : v) w(k++) = x;
  return w;
}

TEST(Simplex, SmallOptimalLP) {
  // min -x1 - x2  s.t.  x1 + 2 x2 + s1 = 4,  3 x1 + x2 + s2 = 6.
  StandardFormLP lp;
  lp.A.resize(2, 4);
  lp.A << 1, 2, 1, 0, 3, 1, 0, 1;
  lp.b = vec({4, 6});
  lp.c = vec({-1, -1, 0, 0});
  const SimplexResult r = solveSimplex(lp);
  ASSERT_EQ(r.status, SimplexResult::Status::Optimal);
  EXPECT_NEAR(r.value, -2.8, 1e-12);
  EXPECT_NEAR(r.x(0), 1.6, 1e-12);
  EXPECT_NEAR(r.x(1), 1.2, 1e-12);
}

TEST(Simplex, DetectsUnboundedAndInfeasible) {
  StandardFormLP lp;
  lp.A.resize(1, 2);
  lp.A << 1, -1;
  lp.b = vec({1});
  lp.c = vec({0, -1});
  const SimplexResult u = solveSimplex(lp);
  ASSERT_EQ(u.status, SimplexResult::Status::Unbounded);
  EXPECT_LT(lp.c.dot(u.ray), 0.0);
  EXPECT_NEAR((lp.A * u.ray).norm(), 0.0, 1e-12);

  lp.A << 1, 1;
  lp.b = vec({-1});
  EXPECT_EQ(solveSimplex(lp).status, SimplexResult::Status::Infeasible);
}

TEST(Simplex, RedundantRowsAreDropped) {
  StandardFormLP lp;
  lp.A.resize(2, 2);
  lp.A << 1, 1, 2, 2;
  lp.b = vec({1, 2});
  lp.c = vec({1, 2});
  const SimplexResult r = solveSimplex(lp);
  ASSERT_EQ(r.status, SimplexResult::Status::Optimal);
  EXPECT_NEAR(r.value, 1.0, 1e-12);
}

TEST(MinMaxAffine, AbsValue) {
  const LPOutcome r = minMaxAffine({{0, vec({1})}, {0, vec({-1})}}, 1);
  ASSERT_TRUE(r.bounded());
  EXPECT_NEAR(r.value, 0.0, 1e-12);
  EXPECT_NEAR(r.argmin(0), 0.0, 1e-12);
}

TEST(MinMaxAffine, SingleNonconstantPieceIsUnbounded) {
  const LPOutcome r = minMaxAffine({{1, vec({2, 0})}}, 2);
  ASSERT_FALSE(r.bounded());
  EXPECT_LT(vec({2, 0}).dot(r.ray), 0.0);
}

TEST(MinMaxAffine, MatchesVertexEnumeration) {
  Rng rng(123);
  for (int t = 0; t < 200; ++t) {
    const int d = static_cast<int>(rng.uniformInt(1, 3));
    std::vector<AugVector> pieces;
    for (int k = 0; k < d; ++k) {
      for (int sign : {1, -1}) {
        Vector v = rng.uniformVector(d, -0.5, 0.5);
        v(k) = sign * rng.uniform(1, 3);
        pieces.emplace_back(rng.normal(), v);
      }
    }
    for (int k = 0; k < 3; ++k) pieces.emplace_back(rng.normal(), rng.uniformVector(d, -3, 3));
    const LPOutcome lp = minMaxAffine(pieces, d);
    const auto brute = oracle::bruteMinMaxAffine(pieces, d);
    ASSERT_TRUE(lp.bounded());
    ASSERT_TRUE(brute.has_value());
    EXPECT_NEAR(lp.value, brute->value, 1e-9);
  }
}

TEST(Classifier, Verdicts) {
  const std::vector<AugVector> absShifted{{1, vec({1})}, {1, vec({-1})}};
  EXPECT_EQ(classifyNonnegative(absShifted).kind, NonnegVerdict::Kind::Nonnegative);

  const std::vector<AugVector> negative{{-1, vec({1})}, {-1, vec({-1})}};
  const NonnegVerdict v = classifyNonnegative(negative);
  ASSERT_EQ(v.kind, NonnegVerdict::Kind::AttainsNegative);
  EXPECT_LT(maxAffine(negative, v.witness), 0.0);

  const std::vector<AugVector> ray{{2, vec({1, 1})}};
  const NonnegVerdict u = classifyNonnegative(ray);
  ASSERT_EQ(u.kind, NonnegVerdict::Kind::UnboundedBelow);
  EXPECT_GT(u.min_norm.a, 0.0);
  EXPECT_LT(vec({1, 1}).dot(u.direction), 0.0);
}

TEST(Classifier, AgreesWithMinNormCriterion) {
  Rng rng(8);
  for (int t = 0; t < 200; ++t) {
    std::vector<AugVector> pieces;
    pieces.emplace_back(rng.normal(), vec({2.0, 0.3}));
    pieces.emplace_back(rng.normal(), vec({-2.0, 0.1}));
    pieces.emplace_back(rng.normal(), vec({0.2, 2.0}));
    pieces.emplace_back(rng.normal(), vec({0.1, -2.0}));
    const NonnegVerdict v = classifyNonnegative(pieces);
    const LPOutcome lp = minMaxAffine(pieces, 2);
    EXPECT_EQ(v.kind == NonnegVerdict::Kind::Nonnegative, v.min_norm.a >= -1e-9);
    EXPECT_EQ(v.kind == NonnegVerdict::Kind::Nonnegative, lp.value >= -1e-9);
  }
}

TEST(PAGlobalMin, MatchesEnumerationOnGeneratedInstances) {
  for (int seed = 0; seed < 30; ++seed) {
    const GeneratedPA g = generatePA(seed, 2 + seed % 2, 6, 1 + seed % 4);
    const LPOutcome lp = paGlobalMin(g.f);
    const auto brute = oracle::bruteGlobalMin(g.f);
    ASSERT_TRUE(lp.bounded());
    ASSERT_TRUE(brute.has_value());
    EXPECT_NEAR(lp.value, brute->value, 1e-8);
    EXPECT_NEAR(eval(g.f, lp.argmin), lp.value, 1e-12);
  }
}

TEST(PAGlobalMin, LinearFunctionIsUnbounded) {
  const DCForm f(1, {{0, vec({1})}}, {{0, vec({0})}});
  EXPECT_FALSE(paGlobalMin(f).bounded());
}

TEST(MinMaxAffine, ShiftedBox) {
  const LPOutcome r =
      minMaxAffine({{-4, vec({1, 0})}, {-4, vec({-1, 0})}, {-4, vec({0, 1})}, {-4, vec({0, -1})}}, 2);
  ASSERT_TRUE(r.bounded());
  EXPECT_NEAR(r.value, -4.0, 1e-12);
  EXPECT_NEAR(r.argmin.norm(), 0.0, 1e-12);
}

TEST(Classifier, ConstantAndShiftedAbs) {
  const NonnegVerdict c = classifyNonnegative({{-1, vec({0})}});
  EXPECT_EQ(c.kind, NonnegVerdict::Kind::AttainsNegative);
  const NonnegVerdict s = classifyNonnegative({{1, vec({1})}, {1, vec({-1})}});
  EXPECT_EQ(s.kind, NonnegVerdict::Kind::Nonnegative);
  EXPECT_NEAR(s.min_norm.a, 1.0, 1e-12);
  EXPECT_NEAR(s.min_norm.v(0), 0.0, 1e-12);
}

TEST(PAGlobalMin, SmallCases) {
  const DCForm abs(1, {{0, vec({1})}, {0, vec({-1})}}, {{0, vec({0})}});
  LPOutcome r = paGlobalMin(abs);
  ASSERT_TRUE(r.bounded());
  EXPECT_NEAR(r.value, 0.0, 1e-12);
  EXPECT_NEAR(r.argmin(0), 0.0, 1e-12);

  const DCForm cancel(2, {{0, vec({1, -1})}}, {{0, vec({-1, 1})}});
  r = paGlobalMin(cancel);
  ASSERT_TRUE(r.bounded());
  EXPECT_NEAR(r.value, 0.0, 1e-12);
}

TEST(PAGlobalMin, LowerBoundsRandomEvaluations) {
  Rng rng(44);
  for (int seed = 0; seed < 10; ++seed) {
    const GeneratedPA g = generatePA(200 + seed, 3, 8, 3);
    const LPOutcome r = paGlobalMin(g.f);
    for (int k = 0; k < 1000; ++k) {
      EXPECT_LE(r.value, eval(g.f, rng.uniformVector(3, -5, 5)) + 1e-8);
    }
  }
}

TEST(MinMaxAffine, ActiveGradientsContainZero) {
  Rng rng(45);
  for (int seed = 0; seed < 30; ++seed) {
    const GeneratedPA g = generatePA(400 + seed, 2 + seed % 3, 8, 1);
    std::vector<AugVector> pieces;
    for (const auto& p : g.f.plus) pieces.push_back(p + g.f.minus.front());
    const LPOutcome r = minMaxAffine(pieces, g.f.d);
    ASSERT_TRUE(r.bounded());
    std::vector<AugVector> active;
    for (const auto& p : pieces) {
      if (p.a + p.v.dot(r.argmin) >= r.value - 1e-9) active.emplace_back(0.0, p.v);
    }
    EXPECT_LE(minNormPoint(VertexSet(active)).point.norm(), 1e-8);
    EXPECT_NEAR(r.value, maxAffine(pieces, r.argmin), 1e-12);
  }
}

}  // namespace
}  // namespace codiff

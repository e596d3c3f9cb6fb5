#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "codiff/minnorm.hpp"
#include "codiff/random.hpp"
#include "oracles.hpp"

namespace codiff {
namespace {

AugVector aug(double a, std::initializer_list<double> v) {
  Vector w(static_cast<int>(v.size()));
  int k = 0;
  for (double x : v) w(k++) = x;
  return {a, w};
}

void expectNear(const AugVector& p, const AugVector& q, double tol) {
  EXPECT_NEAR(p.a, q.a, tol);
  ASSERT_EQ(p.dim(), q.dim());
  for (int k = 0; k < p.dim(); ++k) EXPECT_NEAR(p.v(k), q.v(k), tol);
}

TEST(MinNorm, SingleVertexIsItsOwnProjection) {
  const MinNormResult r = minNormPoint(VertexSet({aug(3, {4})}));
  expectNear(r.point, aug(3, {4}), 0);
  ASSERT_EQ(r.weights.size(), 1u);
  EXPECT_DOUBLE_EQ(r.weights[0], 1.0);
}

TEST(MinNorm, SegmentThroughOriginGivesZero) {
  const MinNormResult r = minNormPoint(VertexSet({aug(0, {1}), aug(0, {-1})}));
  EXPECT_LE(r.point.norm(), 1e-12);
  EXPECT_NEAR(r.weights[0], 0.5, 1e-12);
}

TEST(MinNorm, SegmentProjectionMatchesClosedForm) {
  // Segment from (1, 1) to (1, -1): closest point (1, 0).
  const MinNormResult r = minNormPoint(VertexSet({aug(1, {1}), aug(1, {-1})}));
  expectNear(r.point, aug(1, {0}), 1e-12);
}

TEST(MinNorm, TriangleFaceProjection) {
  // Triangle in the plane a = 1 containing (1, 0, 0).
  const MinNormResult r =
      minNormPoint(VertexSet({aug(1, {1, 0}), aug(1, {-1, 1}), aug(1, {-1, -1})}));
  expectNear(r.point, aug(1, {0, 0}), 1e-12);
}

TEST(MinNorm, WeightsFormConvexCombination) {
  Rng rng(5);
  std::vector<AugVector> s;
  for (int i = 0; i < 20; ++i) s.emplace_back(rng.normal() + 2.0, rng.normalVector(4));
  const VertexSet vs(s);
  const MinNormResult r = minNormPoint(vs);
  double sum = 0.0;
  AugVector combo(0.0, Vector::Zero(4));
  for (std::size_t q = 0; q < s.size(); ++q) {
    EXPECT_GE(r.weights[q], 0.0);
    sum += r.weights[q];
    combo = combo + r.weights[q] * s[q];
  }
  EXPECT_NEAR(sum, 1.0, 1e-12);
  expectNear(combo, r.point, 1e-12);
  EXPECT_GE(wolfeResidual(vs, r.point), -1e-10);
}

TEST(MinNorm, DuplicateVerticesAreHarmless) {
  const MinNormResult r = minNormPoint(
      VertexSet({aug(1, {2}), aug(1, {2}), aug(1, {-2}), aug(1, {-2}), aug(1, {2})}));
  expectNear(r.point, aug(1, {0}), 1e-12);
}

TEST(MinNorm, ResultDependsOnlyOnVertexOrder) {
  const VertexSet s({aug(0, {1, 0}), aug(0, {0, 1}), aug(0, {-1, -1}), aug(1, {0, 0})});
  const MinNormResult r1 = minNormPoint(s);
  const MinNormResult r2 = minNormPoint(s);
  EXPECT_EQ(r1.weights, r2.weights);
}

TEST(MinNorm, RejectsNonFiniteAndMixedDims) {
  EXPECT_THROW(minNormPoint(VertexSet({aug(std::nan(""), {1})})), NonFinite);
  EXPECT_THROW(VertexSet({aug(0, {1}), aug(0, {1, 2})}), DimensionMismatch);
  EXPECT_THROW(VertexSet(std::vector<AugVector>{}), InvalidArgument);
}

TEST(MinNorm, RandomSmallHullsMatchFaceEnumeration) {
  Rng rng(77);
  for (int t = 0; t < 500; ++t) {
    const int d = static_cast<int>(rng.uniformInt(1, 5));
    const int m = static_cast<int>(rng.uniformInt(1, 3));
    std::vector<AugVector> s;
    for (int i = 0; i < m; ++i) s.emplace_back(rng.normal(), rng.normalVector(d));
    expectNear(minNormPoint(VertexSet(s)).point, oracle::projectSmallHull(s), 1e-9);
  }
}

TEST(MinNorm, WolfeOptimalityOnDegenerateLattices) {
  Rng rng(91);
  for (int t = 0; t < 300; ++t) {
    const int d = static_cast<int>(rng.uniformInt(1, 6));
    std::vector<AugVector> s;
    for (int i = 0; i < 40; ++i) {
      Vector v(d);
      for (int k = 0; k < d; ++k) v(k) = static_cast<double>(rng.uniformInt(-2, 2));
      s.emplace_back(static_cast<double>(rng.uniformInt(-1, 1)), v);
    }
    const VertexSet vs(s);
    EXPECT_GE(wolfeResidual(vs, minNormPoint(vs).point), -1e-9);
  }
}

}  // namespace
}  // namespace codiff

#include <gtest/gtest.h>

#include "codiff/generator.hpp"
#include "codiff/polyhedral.hpp"
#include "codiff/serialization.hpp"

namespace codiff {
namespace {

TEST(Generator, SmallInstanceIsBounded) {
  const GeneratedPA g = generatePA(1, 2, 6, 3);
  EXPECT_EQ(g.f.plus.size(), 6u);
  EXPECT_EQ(g.f.minus.size(), 3u);
  EXPECT_TRUE(paGlobalMin(g.f).bounded());
  EXPECT_GT(g.theta_hat, 0.0);
}

TEST(Generator, SameSeedSameInstance) {
  const GeneratedPA a = generatePA(99, 4, 10, 5);
  const GeneratedPA b = generatePA(99, 4, 10, 5);
  EXPECT_EQ(toJson(a.f).dump(), toJson(b.f).dump());
  EXPECT_NE(toJson(a.f).dump(), toJson(generatePA(100, 4, 10, 5).f).dump());
}

TEST(Generator, GradientsAreIntegers) {
  const GeneratedPA g = generatePA(3, 3, 9, 4);
  for (const auto& p : g.f.plus) {
    for (int k = 0; k < p.dim(); ++k) EXPECT_EQ(p.v(k), std::round(p.v(k)));
  }
  for (const auto& q : g.f.minus) EXPECT_LE(q.v.cwiseAbs().maxCoeff(), 2.0);
}

TEST(Generator, RejectsBadShapes) {
  EXPECT_THROW(generatePA(1, 0, 4, 1), InvalidArgument);
  EXPECT_THROW(generatePA(1, 3, 5, 1), InvalidArgument);
  EXPECT_THROW(generatePA(1, 2, 4, 0), InvalidArgument);
  EXPECT_THROW(generatePA(1, 2, 4, 1, 0.0), InvalidArgument);
}

TEST(Generator, TerminationBudgetSaturates) {
  EXPECT_EQ(finiteTerminationBudget(2, 3.0, 1.0), 10 * 2 * 4);
  EXPECT_EQ(finiteTerminationBudget(6, 10.0, 1e-30), INT_MAX);
}

}  // namespace
}  // namespace codiff

#include <gtest/gtest.h>

#include <cmath>

#include "tnl/spaces.hpp"

using namespace tnl;

TEST(Spaces, NormExamples) {
  EXPECT_DOUBLE_EQ(NormedSpace::ellp(2, 2.0).norm(std::vector<double>{3, 4}), 5.0);
  EXPECT_DOUBLE_EQ(NormedSpace::ellp(2, 1.0).norm(std::vector<double>{1, -1}), 2.0);
  EXPECT_DOUBLE_EQ(NormedSpace::ellp(3, kInf).norm(std::vector<double>{0, 0, 0}), 0.0);
}

TEST(Spaces, DualExponents) {
  EXPECT_EQ(NormedSpace::ellp(3, 1.0).dual(), NormedSpace::ellp(3, kInf));
  EXPECT_EQ(NormedSpace::ellp(3, 2.0).dual(), NormedSpace::ellp(3, 2.0));
  EXPECT_NEAR(NormedSpace::ellp(3, 1.5).dual().p(), 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(conjugate(1.0), kInf);
}

TEST(Spaces, WeightedDualIsInvolution) {
  const auto s = NormedSpace::weighted(3, 1.5, {0.3, 2.0, 7.0});
  EXPECT_EQ(s.dual().dual(), s);
  // Hoelder: <f, x> <= ||f||' ||x|| with equality at the ball maximizer.
  const std::vector<double> c{1.0, -2.0, 0.5};
  const auto m = s.maximize_linear(c);
  EXPECT_NEAR(s.norm(m.argmax), 1.0, 1e-12);
  EXPECT_NEAR(dot(c, m.argmax), s.dual().norm(c), 1e-12);
}

TEST(Spaces, Pairing) {
  EXPECT_DOUBLE_EQ(pair({{1, 0}}, {{7, 9}}), 7.0);
  EXPECT_DOUBLE_EQ(pair({{0, 0}}, {{7, 9}}), 0.0);
  const auto l1 = NormedSpace::ellp(2, 1.0);
  const Functional f{{1, 1}};
  const Vector v{{1, 1}};
  EXPECT_DOUBLE_EQ(pair(f, v), 2.0);
  EXPECT_DOUBLE_EQ(l1.dual().norm(f.coords) * l1.norm(v.coords), 2.0);
}

TEST(Spaces, UnitSphereSamples) {
  for (double p : {1.0, 1.5, 2.0, kInf}) {
    const auto s = NormedSpace::ellp(4, p);
    const auto a = sample_unit_sphere(s, 11, 20);
    const auto b = sample_unit_sphere(s, 11, 20);
    ASSERT_EQ(a.size(), 20u);
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_NEAR(s.norm(a[i].coords), 1.0, 1e-12);
      EXPECT_EQ(a[i].coords, b[i].coords);
    }
  }
  EXPECT_THROW(sample_unit_sphere(NormedSpace::ellp(2, 2.0), 1, 0), InvalidArgument);
}

TEST(Spaces, ExtremePoints) {
  EXPECT_EQ(extreme_points(NormedSpace::ellp(2, kInf)).size(), 4u);
  const auto cross = extreme_points(NormedSpace::ellp(2, 1.0));
  ASSERT_EQ(cross.size(), 4u);
  for (const auto& v : cross) EXPECT_DOUBLE_EQ(std::abs(v.coords[0]) + std::abs(v.coords[1]), 1.0);
  EXPECT_THROW(extreme_points(NormedSpace::ellp(2, 2.0)), Unsupported);
}

TEST(Spaces, RejectsInvalid) {
  EXPECT_THROW(NormedSpace::ellp(0, 2.0), InvalidArgument);
  EXPECT_THROW(NormedSpace::ellp(2, 0.5), InvalidArgument);
  EXPECT_THROW(NormedSpace::weighted(2, 2.0, {1.0, -1.0}), InvalidArgument);
  EXPECT_THROW(NormedSpace::ellp(2, 2.0).norm(std::vector<double>{1, 2, 3}), DimensionMismatch);
}

#include <gtest/gtest.h>

#include "support.hpp"
#include "tnl/injective.hpp"

using namespace tnl;
using namespace tnl::test;

TEST(Injective, Elementary) {
  for (double p : {1.0, 1.5, 2.0, kInf}) {
    const TensorSpace s(ell({2, 3}, p));
    const std::vector<std::vector<double>> xs{{1, -2}, {0.5, 3, 1}};
    const double expect = s.factor(0).norm(xs[0]) * s.factor(1).norm(xs[1]);
    EXPECT_NEAR(epsilon_estimate(elementary(s, xs)).lower, expect, 1e-9 * expect) << p;
  }
}

TEST(Injective, IdentityExamples) {
  const Tensor l2 = matrix(ell({2, 2}, 2.0), {1, 0, 0, 1});
  EXPECT_NEAR(epsilon_estimate(l2).lower, largest_singular(l2), 1e-12);
  EXPECT_NEAR(epsilon_estimate(l2).lower, 1.0, 1e-12);

  const Tensor l1 = matrix(ell({2, 2}, 1.0), {1, 0, 0, 1});
  EXPECT_DOUBLE_EQ(injective_by_vertices(l1), 2.0);
  const auto b = epsilon_bruteforce(l1);
  EXPECT_DOUBLE_EQ(b.lower, 2.0);
  EXPECT_DOUBLE_EQ(b.upper, 2.0);
  EXPECT_DOUBLE_EQ(epsilon_estimate(l1).lower, 2.0);
}

TEST(Injective, MatrixOracleExamples) {
  EXPECT_NEAR(epsilon_matrix_oracle(matrix(ell({3, 3}, 2.0), {1, 0, 0, 0, 1, 0, 0, 0, 1})), 1.0, 1e-12);
  EXPECT_NEAR(epsilon_matrix_oracle(matrix(ell({2, 2}, 2.0), {3, 0, 0, 1})), 3.0, 1e-12);
  EXPECT_THROW(epsilon_matrix_oracle(matrix(ell({2, 2}, 1.0), {1, 0, 0, 1})), InvalidArgument);
}

TEST(Injective, PolyhedralMatchesEnumeration) {
  const std::vector<std::vector<NormedSpace>> shapes{
      ell({2, 3}, 1.0), ell({3, 3}, kInf),
      {NormedSpace::ellp(2, 1.0), NormedSpace::ellp(3, kInf), NormedSpace::ellp(2, 1.0)}};
  for (std::size_t i = 0; i < shapes.size(); ++i)
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto z = random_tensor(TensorSpace(shapes[i]), seed);
      const double oracle = injective_by_vertices(z);
      const auto b = epsilon_bruteforce(z);
      EXPECT_NEAR(b.lower, oracle, 1e-12 * oracle);
      EXPECT_NEAR(b.upper, oracle, 1e-12 * oracle);
      EXPECT_LE(epsilon_search(z, {}).value, oracle * (1 + 1e-12));
      EXPECT_NEAR(epsilon_estimate(z).lower, oracle, 1e-9 * oracle);
    }
}

TEST(Injective, GridBracketsSingularValue) {
  const auto z = random_tensor(TensorSpace(ell({2, 2}, 2.0)), 3);
  const double sv = largest_singular(z);
  EXPECT_THROW(epsilon_bruteforce(z), Unsupported);
  EpsilonConfig coarse, fine;
  coarse.grid_resolution = 8;
  fine.grid_resolution = 64;
  const auto a = epsilon_bruteforce(z, coarse);
  const auto b = epsilon_bruteforce(z, fine);
  EXPECT_LE(b.lower, sv * (1 + 1e-12));
  EXPECT_GE(b.upper, sv * (1 - 1e-12));
  EXPECT_LE(b.upper - b.lower, a.upper - a.lower);
}

TEST(Injective, SearchIsDeterministicAndSeeded) {
  const auto z = random_tensor(TensorSpace(ell({3, 2, 2}, 1.5)), 21);
  EpsilonConfig cfg;
  cfg.seed = 4;
  const auto a = epsilon_search(z, cfg);
  const auto b = epsilon_search(z, cfg);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.functionals, b.functionals);
}

TEST(Injective, ZeroTensorAndBudget) {
  const auto z = Tensor::zeros(TensorSpace(ell({2, 3}, 2.0)));
  const auto e = epsilon_estimate(z);
  EXPECT_EQ(e.lower, 0.0);
  EXPECT_EQ(e.upper, 0.0);
  EpsilonConfig tiny;
  tiny.brute_budget = 2;
  EXPECT_THROW(epsilon_bruteforce(random_tensor(TensorSpace(ell({3, 3, 3}, 1.0)), 1), tiny), BudgetExceeded);
  EpsilonConfig bad;
  bad.restarts = 0;
  EXPECT_THROW(epsilon_search(random_tensor(TensorSpace(ell({2, 2}, 1.0)), 1), bad), InvalidArgument);
}

#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "tnl/evaluator.hpp"
#include "tnl/multilinear.hpp"

using namespace tnl;
using namespace tnl::test;

TEST(Multilinear, ValidatesShape) {
  EXPECT_THROW(MultilinearMap(ell({2, 2}, 2.0), NormedSpace::scalars(), {1, 2, 3}), DimensionMismatch);
  const MultilinearMap a(ell({2}, 2.0), NormedSpace::ellp(2, 2.0), {1, 2, 3, 4});
  EXPECT_EQ(a.apply({{1, 0}}), (std::vector<double>{1, 2}));
  EXPECT_THROW(a.as_form(), Unsupported);
}

TEST(Multilinear, SupNormExamples) {
  for (std::size_t n : {1u, 2u, 3u}) {
    const auto e = sup_norm(MultilinearMap::multiplication(n)).estimate;
    EXPECT_EQ(e.lower, 1.0);
    EXPECT_EQ(e.upper, 1.0);
  }
  // phi_1 (x) phi_2 . y with unit functionals and unit y.
  const auto dom = ell({2, 3}, 1.0);
  const std::vector<double> f{1, -1}, g{0, 1, 1}, y{0.6, 0.8};
  std::vector<double> c;
  for (double a : f)
    for (double b : g)
      for (double v : y) c.push_back(a * b * v);
  const MultilinearMap a(dom, NormedSpace::ellp(2, 2.0), c);
  EXPECT_NEAR(sup_norm(a).estimate.lower, 1.0, 1e-12);
}

TEST(Multilinear, LinearizationExamples) {
  const ProjectiveNorm pi;
  const InjectiveNorm eps;
  const auto dom = ell({2, 2}, 2.0);
  const MultilinearMap zero(dom, NormedSpace::scalars(), std::vector<double>(4, 0.0));
  EXPECT_EQ(linearization_norm(zero, pi).lower, 0.0);
  // Product form of unit functionals has norm 1 in the dual of eps.
  Rng rng(2);
  const std::vector<std::vector<double>> fs{random_unit(dom[0].dual(), rng), random_unit(dom[1].dual(), rng)};
  const auto form = MultilinearMap::from_form(elementary(TensorSpace(dom), fs));
  const auto e = linearization_norm(form, eps);
  EXPECT_NEAR(e.lower, 1.0, 1e-6);
  EXPECT_NEAR(e.upper, 1.0, 1e-6);
}

TEST(Multilinear, ProjectiveDualIsSupNorm) {
  const ProjectiveNorm pi;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto a = random_map(ell({2, 3}, 1.5), NormedSpace::scalars(), seed);
    const double s = sup_norm(a, epsilon_config({})).estimate.lower;
    const double l = linearization_norm(a, pi).lower;
    EXPECT_NEAR(l, s, 1e-4 * s);
  }
}

TEST(Multilinear, OneAdjunction) {
  // A(x, lambda) = lambda phi(x).
  const std::vector<double> phi{2, -1, 0.5};
  const MultilinearMap a({NormedSpace::ellp(3, 2.0), NormedSpace::scalars()}, NormedSpace::scalars(), phi);
  const auto a1 = one_adjunction(a);
  EXPECT_EQ(a1.order(), 1u);
  EXPECT_EQ(a1.coeffs, phi);
  const auto back = one_adjunction_inverse(a1);
  EXPECT_EQ(back.coeffs, a.coeffs);
  EXPECT_EQ(back.domain, a.domain);
}

TEST(Multilinear, ScalarBridge) {
  // Identity l2^2 -> (l2^2)' becomes the inner product.
  const auto l2 = NormedSpace::ellp(2, 2.0);
  const MultilinearMap t({l2}, l2.dual(), {1, 0, 0, 1});
  const auto form = to_scalar_form(t);
  EXPECT_EQ(form.coeffs, (std::vector<double>{1, 0, 0, 1}));
  EXPECT_EQ(form.domain[1], l2);
  const ProjectiveNorm pi;
  EXPECT_NEAR(sup_norm(t).estimate.lower, 1.0, 1e-12);
  EXPECT_NEAR(linearization_norm(form, pi).lower, 1.0, 1e-9);
  const auto round = from_scalar_form(form);
  EXPECT_EQ(round.coeffs, t.coeffs);
  EXPECT_EQ(round.codomain, t.codomain);
  const MultilinearMap zero({l2}, l2, std::vector<double>(4, 0.0));
  EXPECT_TRUE(to_scalar_form(zero).as_form().is_zero());
}

TEST(Multilinear, ComposeMatchesPointwise) {
  const auto dom = ell({2, 2}, 2.0);
  const auto a = random_map(dom, NormedSpace::ellp(3, 1.0), 4);
  LinearMap t{NormedSpace::ellp(3, 1.0), NormedSpace::ellp(2, 1.0), {1, 2, 0, 0, -1, 3}};
  LinearMap u{dom[0], dom[0], {0, 1, 1, 0}};
  LinearMap v{dom[1], dom[1], {2, 0, 1, 1}};
  const auto c = compose(t, a, {u, v});
  const std::vector<double> x{0.3, -1}, y{2, 0.5};
  const auto expect = t.apply(a.apply({u.apply(x), v.apply(y)}));
  const auto got = c.apply({x, y});
  for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(got[i], expect[i], 1e-12);
}

TEST(Multilinear, PropertyB) {
  const auto spaces = ell({2, 2}, 2.0);
  EvaluatorParams params;
  const auto pi = property_B_check(ProjectiveNorm(params), spaces, 4, 1);
  EXPECT_LT(pi.max_deviation, 1e-6);
  const auto eps = property_B_check(InjectiveNorm(params), spaces, 4, 1);
  EXPECT_LT(eps.max_deviation, 1e-6);
  const auto sigma = property_B_check(SigmaNorm(params), spaces, 2, 1);
  EXPECT_LT(sigma.max_deviation, 1e-5);
  EXPECT_THROW(property_B_check(BetaNorm(params), spaces, 1, 1), Unsupported);
}

TEST(Summing, ZeroAndSupFloor) {
  const auto dom = ell({2, 2}, 2.0);
  const MultilinearMap zero(dom, NormedSpace::scalars(), std::vector<double>(4, 0.0));
  EXPECT_EQ(sm_pq_norm(zero).estimate.lower, 0.0);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto a = random_map(dom, NormedSpace::ellp(2, 1.5), seed);
    SummingConfig cfg;
    cfg.seed = seed;
    EXPECT_GE(sm_pq_norm(a, cfg).estimate.lower, sup_norm(a, cfg.sup).estimate.lower - 1e-9);
  }
}

// For a linear map on l2 with q = 2 the form-ball sup of sum |f(x_j)|^2 is
// the largest eigenvalue of the Gram matrix, so the ratio of the identity is
// the Frobenius over the spectral norm of the family matrix.
TEST(Summing, IdentityTwoSumming) {
  const double oracle = identity_two_summing_oracle(4);
  EXPECT_NEAR(oracle, std::sqrt(2.0), 1e-12);
  const auto l2 = NormedSpace::ellp(2, 2.0);
  const MultilinearMap id({l2}, l2, {1, 0, 0, 1});
  SummingConfig cfg;
  cfg.family_budget = 4;
  EXPECT_NEAR(sm_pq_norm(id, cfg).estimate.lower, oracle, 2e-2);
}

#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "tnl/projective.hpp"
#include "tnl/sigma.hpp"

using namespace tnl;
using namespace tnl::test;

TEST(Sigma, ConjugatePairs) {
  EXPECT_EQ(ConjugatePair::of(1.0).q, kInf);
  EXPECT_NEAR(ConjugatePair::of(1.5).q, 3.0, 1e-12);
  EXPECT_THROW(ConjugatePair::of(0.5), InvalidArgument);
}

TEST(Sigma, ModulusExamples) {
  const TensorSpace s(ell({2, 3}, 1.5));
  const std::vector<std::vector<double>> xs{{1, -2}, {0.5, 3, 1}};
  const double prod = s.factor(0).norm(xs[0]) * s.factor(1).norm(xs[1]);
  Decomposition one;
  one.terms.push_back({1.0, xs});
  Decomposition twice = one;
  twice.terms.push_back({1.0, xs});
  for (double p : {1.0, 1.5, 2.0}) {
    EXPECT_NEAR(family_modulus_p(s, one, p).value, prod, 1e-9 * prod);
    EXPECT_NEAR(family_modulus_p(s, twice, p).value, std::pow(2.0, 1.0 / p) * prod, 1e-9 * prod);
  }
  EXPECT_NEAR(family_modulus_p(s, twice, kInf).value, prod, 1e-9 * prod);
}

// With polyhedral dual balls the modulus is a maximum over vertex tuples.
TEST(Sigma, ModulusPolyhedralMatchesVertices) {
  const TensorSpace s(ell({2, 2}, 1.0));
  const auto d = random_decomposition(s, 3, 3);
  for (double p : {1.0, 2.0}) {
    double best = 0.0;
    for (const auto& f : sign_vectors(2))
      for (const auto& g : sign_vectors(2)) {
        double acc = 0.0;
        for (const auto& t : d.terms)
          acc += std::pow(std::abs(t.lambda * dot(f, t.vectors[0]) * dot(g, t.vectors[1])), p);
        best = std::max(best, std::pow(acc, 1.0 / p));
      }
    const auto m = family_modulus_p(s, d, p);
    EXPECT_TRUE(m.exact);
    EXPECT_NEAR(m.value, best, 1e-12 * best);
  }
}

TEST(Sigma, ElementaryAndZero) {
  for (double p : {1.0, 1.5, 2.0}) {
    const TensorSpace s(ell({2, 3}, 2.0));
    const std::vector<std::vector<double>> xs{{1, -2}, {0.5, 3, 1}};
    const double prod = s.factor(0).norm(xs[0]) * s.factor(1).norm(xs[1]);
    SigmaConfig cfg;
    cfg.p = p;
    const auto e = sigma_p_estimate(elementary(s, xs), cfg);
    EXPECT_NEAR(e.upper, prod, 1e-6 * prod) << p;
    EXPECT_NEAR(e.lower, prod, 1e-6 * prod) << p;
    const auto z = sigma_p_estimate(Tensor::zeros(s), cfg);
    EXPECT_EQ(z.upper, 0.0);
  }
}

TEST(Sigma, SandwichedBetweenInjectiveAndProjective) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto z = random_tensor(TensorSpace(ell({2, 2}, 2.0)), seed);
    for (double p : {1.0, 2.0}) {
      SigmaConfig cfg;
      cfg.p = p;
      const auto e = sigma_p_estimate(z, cfg);
      EXPECT_LE(e.lower, e.upper);
      EXPECT_GE(e.upper, largest_singular(z) * (1 - 1e-9));
      // sigma_p is below pi up to the search slack.
      EXPECT_LE(e.upper, nuclear(z) * (1 + 1e-3));
    }
  }
}

TEST(Sigma, PInfinityIsProjective) {
  const auto z = random_tensor(TensorSpace(ell({2, 2}, 2.0)), 6);
  SigmaConfig cfg;
  cfg.p = kInf;
  EXPECT_NEAR(sigma_p_upper(z, cfg).value, pi_upper(z, cfg.search).value, 1e-12);
}

TEST(Sigma, DualOfProductForm) {
  const TensorSpace s(ell({2, 3}, 2.0));
  Rng rng(5);
  const std::vector<std::vector<double>> fs{random_unit(s.factor(0).dual(), rng),
                                            random_unit(s.factor(1).dual(), rng)};
  SigmaDualConfig cfg;
  const auto r = sigma_p_dual(elementary(s, fs), cfg);
  EXPECT_NEAR(r.estimate.lower, 1.0, 1e-6);
  EXPECT_EQ(sigma_p_dual(Tensor::zeros(s), cfg).estimate.lower, 0.0);
}

TEST(Beta, ElementaryAndZero) {
  const TensorSpace s(ell({2, 2, 2}, 2.0));
  const std::vector<std::vector<double>> xs{{1, -2}, {0.5, 3}, {2, 1}};
  double prod = 1.0;
  for (std::size_t l = 0; l < 3; ++l) prod *= s.factor(l).norm(xs[l]);
  BetaConfig cfg;
  const auto r = beta_p_upper(elementary(s, xs), cfg);
  ASSERT_TRUE(r.feasible);
  EXPECT_NEAR(r.value, prod, 1e-6 * prod);
  EXPECT_EQ(beta_p_upper(Tensor::zeros(s), cfg).value, 0.0);
}

TEST(Beta, ReconstructsAndDominatesInjective) {
  const TensorSpace s(ell({2, 2, 2}, 2.0));
  const auto z = random_tensor(s, 12);
  const auto r = beta_p_upper(z, {});
  ASSERT_TRUE(r.feasible);
  const auto back = from_grouped(s, r.decomposition);
  for (std::size_t i = 0; i < z.coeffs.size(); ++i) EXPECT_NEAR(back.coeffs[i], z.coeffs[i], 1e-8);
  EXPECT_GE(r.value, epsilon_estimate(z).lower * (1 - 1e-9));
}

#include <gtest/gtest.h>

#include "support.hpp"
#include "tnl/injective.hpp"
#include "tnl/multilinear.hpp"
#include "tnl/projective.hpp"
#include "tnl/sigma.hpp"
#include "tnl/verify.hpp"

using namespace tnl;
using namespace tnl::test;

// Every Exec::parallel path must reproduce the serial reference bit for bit.

TEST(Parallel, EpsilonSearch) {
  const auto z = random_tensor(TensorSpace(ell({3, 2, 3}, 1.5)), 2);
  EpsilonConfig s, p;
  p.exec = Exec::parallel;
  const auto a = epsilon_search(z, s);
  const auto b = epsilon_search(z, p);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.functionals, b.functionals);
}

TEST(Parallel, EpsilonBruteforce) {
  const auto z = random_tensor(TensorSpace(ell({3, 3, 3}, 1.0)), 2);
  EpsilonConfig s, p;
  p.exec = Exec::parallel;
  EXPECT_EQ(epsilon_bruteforce(z, s).lower, epsilon_bruteforce(z, p).lower);
}

TEST(Parallel, ProjectiveSearch) {
  const auto z = random_tensor(TensorSpace(ell({2, 3}, 1.5)), 3);
  SearchConfig s, p;
  p.exec = Exec::parallel;
  const auto a = pi_upper(z, s);
  const auto b = pi_upper(z, p);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.restart, b.restart);
}

TEST(Parallel, SigmaSearch) {
  const auto z = random_tensor(TensorSpace(ell({2, 2}, 2.0)), 4);
  SigmaConfig s, p;
  s.p = p.p = 1.5;
  p.search.exec = Exec::parallel;
  EXPECT_EQ(sigma_p_upper(z, s).value, sigma_p_upper(z, p).value);
}

TEST(Parallel, SigmaDual) {
  const auto a = random_tensor(TensorSpace(ell({2, 2}, 2.0)), 5);
  SigmaDualConfig s, p;
  p.exec = Exec::parallel;
  EXPECT_EQ(sigma_p_dual(a, s).estimate.lower, sigma_p_dual(a, p).estimate.lower);
}

TEST(Parallel, BetaSearch) {
  const auto z = random_tensor(TensorSpace(ell({2, 2, 2}, 2.0)), 6);
  BetaConfig s, p;
  p.exec = Exec::parallel;
  EXPECT_EQ(beta_p_upper(z, s).value, beta_p_upper(z, p).value);
}

TEST(Parallel, SummingSearch) {
  const auto a = random_map(ell({2, 2}, 2.0), NormedSpace::ellp(2, 2.0), 7);
  SummingConfig s, p;
  s.restarts = p.restarts = 2;
  p.exec = Exec::parallel;
  EXPECT_EQ(sm_pq_norm(a, s).estimate.lower, sm_pq_norm(a, p).estimate.lower);
}

TEST(Parallel, SuiteReports) {
  verify::SuiteOptions s;
  s.norm = "eps";
  s.samples = 3;
  s.shapes = {ell({2, 3}, 2.0)};
  auto p = s;
  p.exec = Exec::parallel;
  for (const char* suite : {"crossnorm", "smoothness", "metric"})
    EXPECT_EQ(verify::report_json(verify::run_suite(suite, s)).dump(),
              verify::report_json(verify::run_suite(suite, p)).dump())
        << suite;
}

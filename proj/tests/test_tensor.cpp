#include <gtest/gtest.h>

#include "support.hpp"
#include "tnl/kernels.hpp"
#include "tnl/tensor.hpp"

using namespace tnl;
using tnl::test::ell;

TEST(Tensor, FromDecompositionExamples) {
  const TensorSpace s(ell({2, 2}, 2.0));
  Decomposition d;
  d.terms.push_back({1.0, {{1, 0}, {1, 0}}});
  EXPECT_EQ(from_decomposition(s, d).coeffs, (std::vector<double>{1, 0, 0, 0}));

  Decomposition c;
  c.terms.push_back({1.0, {{0.3, -2}, {1.5, 4}}});
  c.terms.push_back({-1.0, {{0.3, -2}, {1.5, 4}}});
  EXPECT_TRUE(from_decomposition(s, c).is_zero());

  Decomposition e;
  e.terms.push_back({2.0, {{1, 0}, {0, 1}}});
  EXPECT_EQ(from_decomposition(s, e).coeffs, (std::vector<double>{0, 2, 0, 0}));

  Decomposition bad;
  bad.terms.push_back({1.0, {{1, 0, 0}, {1, 0}}});
  EXPECT_THROW(from_decomposition(s, bad), DimensionMismatch);
}

TEST(Tensor, EvalFunctionals) {
  const TensorSpace s(ell({2, 2}, 2.0));
  const Tensor e11(s, {1, 0, 0, 0});
  const std::vector<Functional> fs{{{1, 0}}, {{1, 0}}};
  EXPECT_DOUBLE_EQ(eval_functionals(e11, fs), 1.0);
  const Tensor z = random_tensor(TensorSpace(ell({2, 3, 2}, 1.0)), 4);
  const std::vector<Functional> zero{{{1, 2}}, {{0, 0, 0}}, {{3, 1}}};
  EXPECT_DOUBLE_EQ(eval_functionals(z, zero), 0.0);
  // Coefficient and decomposition forms agree.
  const auto d = random_decomposition(TensorSpace(ell({2, 3, 2}, 1.0)), 9, 3);
  const Tensor zd = from_decomposition(TensorSpace(ell({2, 3, 2}, 1.0)), d);
  const std::vector<Functional> gs{{{0.5, -1}}, {{1, 2, -3}}, {{0.25, 4}}};
  EXPECT_NEAR(eval_functionals(zd, gs), eval_functionals(d, gs), 1e-12);
}

TEST(Tensor, FlattenScalar) {
  const TensorSpace s(ell({2, 3}, 2.0));
  const std::vector<std::vector<double>> xs{{1, 2}, {3, -1, 0.5}, {3}};
  const Tensor z = elementary(s.with_scalar(), xs);
  const Tensor flat = flatten_scalar(z);
  const Tensor expect = elementary(s, std::vector<std::vector<double>>{{3, 6}, {3, -1, 0.5}});
  for (std::size_t i = 0; i < flat.coeffs.size(); ++i)
    EXPECT_DOUBLE_EQ(flat.coeffs[i], expect.coeffs[i]);
  const Tensor r = random_tensor(s, 3);
  const Tensor back = flatten_scalar(unflatten_scalar(r));
  EXPECT_EQ(back.coeffs, r.coeffs);
  EXPECT_EQ(back.space, r.space);
  EXPECT_THROW(flatten_scalar(r), InvalidArgument);
}

TEST(Tensor, ApplyOperators) {
  const auto f = ell({2, 3}, 1.5);
  const Tensor z = random_tensor(TensorSpace(f), 5);
  const std::vector<LinearMap> id{LinearMap::identity(f[0]), LinearMap::identity(f[1])};
  EXPECT_EQ(apply_operators(z, id).coeffs, z.coeffs);
  auto zero = id;
  std::fill(zero[1].matrix.begin(), zero[1].matrix.end(), 0.0);
  EXPECT_TRUE(apply_operators(z, zero).is_zero());
  // Operators may change the factor dimension.
  LinearMap wide{f[0], NormedSpace::ellp(4, 2.0), std::vector<double>(8, 1.0)};
  const auto w = apply_operators(z, std::vector<LinearMap>{wide, id[1]});
  EXPECT_EQ(w.space.dims(), (std::vector<std::size_t>{4, 3}));
}

TEST(Tensor, RandomTensorDeterministic) {
  const TensorSpace s(ell({2, 2, 3}, 2.0));
  EXPECT_EQ(random_tensor(s, 8).coeffs, random_tensor(s, 8).coeffs);
  EXPECT_NE(random_tensor(s, 8).coeffs, random_tensor(s, 9).coeffs);
  const auto lr = random_tensor(s, 8, TensorStyle::LowRank(2));
  EXPECT_EQ(lr.coeffs, from_decomposition(s, random_decomposition(s, 8, 2)).coeffs);
}

TEST(Tensor, SizeCap) {
  EXPECT_THROW(TensorSpace(ell({20, 20, 20}, 2.0)), BudgetExceeded);
  EXPECT_THROW(TensorSpace(std::vector<NormedSpace>{}), InvalidArgument);
  EXPECT_THROW(Tensor(TensorSpace(ell({2, 2}, 2.0)), {1, 2, 3}), DimensionMismatch);
}

TEST(Kernels, MatchReference) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const TensorSpace s(ell({3, 1, 4, 2}, 2.0));
    const auto z = random_tensor(s, seed);
    const auto dims = s.dims();
    Rng rng(seed);
    kernels::Factors fs;
    for (auto d : dims) fs.push_back(random_unit(NormedSpace::ellp(d, 2.0), rng));
    for (std::size_t skip : {kernels::kAll, std::size_t{0}, std::size_t{1}, std::size_t{3}}) {
      const auto a = kernels::contract(z.coeffs, dims, fs, skip);
      const auto b = kernels::contract_reference(z.coeffs, dims, fs, skip);
      ASSERT_EQ(a.size(), b.size());
      for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
    }
    std::vector<double> m(5 * 4);
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::sin(1.0 + i + seed);
    const auto a = kernels::mode_product(z.coeffs, dims, 2, m, 5);
    const auto b = kernels::mode_product_reference(z.coeffs, dims, 2, m, 5);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
  }
}

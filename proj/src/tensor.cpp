#include "tnl/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "tnl/kernels.hpp"

namespace tnl {

TensorSpace::TensorSpace(std::vector<NormedSpace> factors,
                         std::size_t max_total)
    : factors_(std::move(factors)) {
  if (factors_.empty())
    throw InvalidArgument("a tensor space needs at least one factor");
  for (const auto& f : factors_) {
    total_ *= f.dim();
    if (total_ > max_total)
      throw BudgetExceeded("total tensor dimension exceeds the cap of " +
                           std::to_string(max_total));
  }
}

std::vector<std::size_t> TensorSpace::dims() const {
  std::vector<std::size_t> d;
  d.reserve(factors_.size());
  for (const auto& f : factors_) d.push_back(f.dim());
  return d;
}

TensorSpace TensorSpace::dual() const {
  std::vector<NormedSpace> f;
  for (const auto& s : factors_) f.push_back(s.dual());
  return TensorSpace(std::move(f), total_);
}

TensorSpace TensorSpace::with_scalar() const {
  auto f = factors_;
  f.push_back(NormedSpace::scalars());
  return TensorSpace(std::move(f), std::max(total_, kDefaultMaxTotalDim));
}

Tensor::Tensor(TensorSpace s, std::vector<double> c)
    : space(std::move(s)), coeffs(std::move(c)) {
  if (coeffs.size() != space.total())
    throw DimensionMismatch("coefficient count " +
                            std::to_string(coeffs.size()) +
                            " does not match tensor space dimension " +
                            std::to_string(space.total()));
}

Tensor Tensor::zeros(TensorSpace s) {
  const std::size_t n = s.total();
  return Tensor(std::move(s), std::vector<double>(n, 0.0));
}

bool Tensor::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(),
                     [](double x) { return x == 0.0; });
}

double Tensor::max_abs() const {
  double m = 0.0;
  for (double x : coeffs) m = std::max(m, std::abs(x));
  return m;
}

LinearMap LinearMap::identity(const NormedSpace& s) {
  LinearMap u{s, s, std::vector<double>(s.dim() * s.dim(), 0.0)};
  for (std::size_t i = 0; i < s.dim(); ++i) u.matrix[i * s.dim() + i] = 1.0;
  return u;
}

std::vector<double> LinearMap::apply(std::span<const double> x) const {
  if (x.size() != from.dim()) throw DimensionMismatch("operator input size");
  std::vector<double> y(to.dim(), 0.0);
  for (std::size_t r = 0; r < to.dim(); ++r)
    for (std::size_t c = 0; c < from.dim(); ++c)
      y[r] += matrix[r * from.dim() + c] * x[c];
  return y;
}

namespace {

void check_vectors(const TensorSpace& space,
                   const std::vector<std::vector<double>>& vs) {
  if (vs.size() != space.order())
    throw DimensionMismatch("term has " + std::to_string(vs.size()) +
                            " vectors for an order-" +
                            std::to_string(space.order()) + " space");
  for (std::size_t l = 0; l < vs.size(); ++l)
    if (vs[l].size() != space.factor(l).dim())
      throw DimensionMismatch("term vector does not match factor " +
                              std::to_string(l));
}

}  // namespace

Tensor from_decomposition(const TensorSpace& space, const Decomposition& d) {
  Tensor z = Tensor::zeros(space);
  for (const auto& t : d.terms) {
    check_vectors(space, t.vectors);
    kernels::add_outer(z.coeffs, t.vectors, t.lambda);
  }
  return z;
}

Tensor from_grouped(const TensorSpace& space, const GroupedDecomposition& g) {
  const std::size_t n = space.order() - 1;
  const std::size_t fdim = space.factor(n).dim();
  Tensor z = Tensor::zeros(space);
  for (const auto& block : g.blocks) {
    if (block.families.size() != n)
      throw DimensionMismatch("block needs one family per non-final factor");
    std::vector<std::size_t> sizes;
    std::size_t count = 1;
    for (std::size_t l = 0; l < n; ++l) {
      sizes.push_back(block.families[l].size());
      count *= sizes.back();
      for (const auto& x : block.families[l])
        if (x.size() != space.factor(l).dim())
          throw DimensionMismatch("family vector does not match factor");
    }
    if (block.coeffs.size() != count * fdim)
      throw DimensionMismatch("block coefficient array has the wrong shape");
    std::vector<std::size_t> idx(n, 0);
    for (std::size_t J = 0; J < count; ++J) {
      kernels::Factors vs;
      for (std::size_t l = 0; l < n; ++l)
        vs.push_back(block.families[l][idx[l]]);
      vs.emplace_back(block.coeffs.begin() + J * fdim,
                      block.coeffs.begin() + (J + 1) * fdim);
      kernels::add_outer(z.coeffs, vs, 1.0);
      for (std::size_t l = n; l-- > 0;) {
        if (++idx[l] < sizes[l]) break;
        idx[l] = 0;
      }
    }
  }
  return z;
}

double eval_functionals(const Tensor& z, std::span<const Functional> fs) {
  if (fs.size() != z.space.order())
    throw DimensionMismatch("one functional per factor is required");
  kernels::Factors f;
  for (std::size_t l = 0; l < fs.size(); ++l) {
    if (fs[l].coords.size() != z.space.factor(l).dim())
      throw DimensionMismatch("functional does not match factor " +
                              std::to_string(l));
    f.push_back(fs[l].coords);
  }
  const auto dims = z.space.dims();
  return kernels::contract(z.coeffs, dims, f)[0];
}

double eval_functionals(const Decomposition& d,
                        std::span<const Functional> fs) {
  double s = 0.0;
  for (const auto& t : d.terms) {
    if (t.vectors.size() != fs.size())
      throw DimensionMismatch("one functional per factor is required");
    double v = t.lambda;
    for (std::size_t l = 0; l < fs.size(); ++l)
      v *= dot(fs[l].coords, t.vectors[l]);
    s += v;
  }
  return s;
}

Tensor flatten_scalar(const Tensor& z) {
  const std::size_t n = z.space.order();
  if (n < 2) throw InvalidArgument("flatten_scalar needs at least two factors");
  const NormedSpace& last = z.space.factor(n - 1);
  if (last.dim() != 1)
    throw InvalidArgument("last factor is not one-dimensional");
  if (!last.unit_scale())
    throw InvalidArgument("scalar factor must carry unit weight");
  std::vector<NormedSpace> f(z.space.factors().begin(),
                             z.space.factors().end() - 1);
  return Tensor(TensorSpace(std::move(f), std::max(z.space.total(),
                                                   kDefaultMaxTotalDim)),
                z.coeffs);
}

Tensor unflatten_scalar(const Tensor& z) {
  return Tensor(z.space.with_scalar(), z.coeffs);
}

Tensor apply_operators(const Tensor& z, std::span<const LinearMap> us) {
  const std::size_t n = z.space.order();
  if (us.size() != n)
    throw DimensionMismatch("one operator per factor is required");
  std::vector<double> cur = z.coeffs;
  std::vector<std::size_t> dims = z.space.dims();
  std::vector<NormedSpace> targets;
  for (std::size_t l = 0; l < n; ++l) {
    if (us[l].from.dim() != z.space.factor(l).dim())
      throw DimensionMismatch("operator domain does not match factor " +
                              std::to_string(l));
    if (us[l].matrix.size() != us[l].to.dim() * us[l].from.dim())
      throw DimensionMismatch("operator matrix has the wrong shape");
    cur = kernels::mode_product(cur, dims, l, us[l].matrix, us[l].to.dim());
    dims[l] = us[l].to.dim();
    targets.push_back(us[l].to);
  }
  return Tensor(TensorSpace(std::move(targets)), std::move(cur));
}

Decomposition random_decomposition(const TensorSpace& space,
                                   std::uint64_t seed, std::size_t rank) {
  Rng rng(stream_seed(seed, 0x10a7));
  std::normal_distribution<double> g(0.0, 1.0);
  Decomposition d;
  for (std::size_t j = 0; j < rank; ++j) {
    Decomposition::Term t;
    t.lambda = 1.0;
    for (std::size_t l = 0; l < space.order(); ++l) {
      std::vector<double> v(space.factor(l).dim());
      for (double& x : v) x = g(rng);
      t.vectors.push_back(std::move(v));
    }
    d.terms.push_back(std::move(t));
  }
  return d;
}

Tensor random_tensor(const TensorSpace& space, std::uint64_t seed,
                     TensorStyle style) {
  if (style.kind == TensorStyle::low_rank)
    return from_decomposition(space,
                              random_decomposition(space, seed, style.rank));
  Rng rng(stream_seed(seed, 0xde75e));
  std::normal_distribution<double> g(0.0, 1.0);
  Tensor z = Tensor::zeros(space);
  for (double& x : z.coeffs) x = g(rng);
  return z;
}

Tensor elementary(const TensorSpace& space,
                  std::span<const std::vector<double>> vectors) {
  kernels::Factors vs(vectors.begin(), vectors.end());
  check_vectors(space, vs);
  return Tensor(space, kernels::outer(vs));
}

double pairing(const Tensor& a, const Tensor& b) {
  return dot(a.coeffs, b.coeffs);
}

}  // namespace tnl

#include "tnl/multilinear.hpp"

#include <algorithm>
#include <cmath>

#include "tnl/kernels.hpp"

namespace tnl {

namespace {

std::vector<std::size_t> coeff_dims(const std::vector<NormedSpace>& domain,
                                    const NormedSpace& codomain) {
  std::vector<std::size_t> d;
  for (const auto& s : domain) d.push_back(s.dim());
  d.push_back(codomain.dim());
  return d;
}

std::size_t product(const std::vector<std::size_t>& d) {
  std::size_t p = 1;
  for (auto x : d) p *= x;
  return p;
}

}  // namespace

MultilinearMap::MultilinearMap(std::vector<NormedSpace> dom, NormedSpace cod,
                               std::vector<double> c)
    : domain(std::move(dom)), codomain(std::move(cod)), coeffs(std::move(c)) {
  if (domain.empty()) throw InvalidArgument("a map needs at least one domain factor");
  const std::size_t want = product(coeff_dims(domain, codomain));
  if (coeffs.size() != want)
    throw DimensionMismatch("map has " + std::to_string(coeffs.size()) +
                            " coefficients, expected " + std::to_string(want));
}

std::vector<double> MultilinearMap::apply(
    const std::vector<std::vector<double>>& xs) const {
  if (xs.size() != domain.size())
    throw DimensionMismatch("one argument per domain factor is required");
  kernels::Factors fs(xs.begin(), xs.end());
  for (std::size_t l = 0; l < xs.size(); ++l)
    if (xs[l].size() != domain[l].dim())
      throw DimensionMismatch("argument does not match domain factor " +
                              std::to_string(l));
  fs.emplace_back(codomain.dim(), 0.0);
  const auto dims = coeff_dims(domain, codomain);
  return kernels::contract(coeffs, dims, fs, domain.size());
}

Tensor MultilinearMap::as_form() const {
  if (!scalar()) throw Unsupported("map is not scalar-valued");
  if (!codomain.unit_scale())
    throw InvalidArgument("scalar codomain must carry unit weight");
  return Tensor(TensorSpace(domain), coeffs);
}

MultilinearMap MultilinearMap::from_form(const Tensor& form) {
  return MultilinearMap(form.space.factors(), NormedSpace::scalars(), form.coeffs);
}

MultilinearMap MultilinearMap::multiplication(std::size_t n) {
  if (n == 0) throw InvalidArgument("multiplication form needs n >= 1");
  return MultilinearMap(std::vector<NormedSpace>(n, NormedSpace::scalars()),
                        NormedSpace::scalars(), {1.0});
}

SupNorm sup_norm(const MultilinearMap& a, const EpsilonConfig& cfg) {
  std::vector<NormedSpace> f;
  for (const auto& s : a.domain) f.push_back(s.dual());
  f.push_back(a.codomain);
  const Tensor t(TensorSpace(std::move(f)), a.coeffs);
  SupNorm out;
  out.estimate.seed = cfg.seed;
  if (t.is_zero()) {
    out.estimate = NormEstimate::exact(0.0, cfg.seed);
    for (const auto& s : a.domain) out.argmax.emplace_back(s.dim(), 0.0);
    return out;
  }
  auto s = epsilon_search(t, cfg);
  out.estimate.lower = s.value;
  out.estimate.converged = s.converged;
  out.estimate.iterations = s.iterations;
  if (cfg.certify && epsilon_exact_available(t.space, cfg.brute_budget)) {
    const auto b = epsilon_bruteforce(t, cfg);
    out.estimate.lower = std::max(out.estimate.lower, b.lower);
    out.estimate.upper = std::max(out.estimate.lower, b.upper);
  }
  s.functionals.pop_back();
  out.argmax = std::move(s.functionals);
  return out;
}

NormEstimate operator_norm(const LinearMap& u, const EpsilonConfig& cfg) {
  const std::size_t m = u.to.dim(), k = u.from.dim();
  if (u.matrix.size() != m * k)
    throw DimensionMismatch("operator matrix has the wrong shape");
  std::vector<double> c(k * m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t i = 0; i < k; ++i) c[i * m + r] = u.matrix[r * k + i];
  return sup_norm(MultilinearMap({u.from}, u.to, std::move(c)), cfg).estimate;
}

NormEstimate linearization_norm(const MultilinearMap& a,
                                const TensorNormEvaluator& beta) {
  if (!a.scalar())
    throw Unsupported("linearization norms are computed for scalar maps; "
                      "use to_scalar_form for vector-valued maps");
  return beta.dual_estimate(a.as_form());
}

MultilinearMap one_adjunction(const MultilinearMap& a) {
  const NormedSpace& last = a.domain.back();
  if (a.domain.size() < 2 || last.dim() != 1 || !last.unit_scale())
    throw InvalidArgument("last domain factor is not the scalar field");
  std::vector<NormedSpace> d(a.domain.begin(), a.domain.end() - 1);
  return MultilinearMap(std::move(d), a.codomain, a.coeffs);
}

MultilinearMap one_adjunction_inverse(const MultilinearMap& a1) {
  auto d = a1.domain;
  d.push_back(NormedSpace::scalars());
  return MultilinearMap(std::move(d), a1.codomain, a1.coeffs);
}

MultilinearMap to_scalar_form(const MultilinearMap& t) {
  auto d = t.domain;
  d.push_back(t.codomain.dual());
  return MultilinearMap(std::move(d), NormedSpace::scalars(), t.coeffs);
}

MultilinearMap from_scalar_form(const MultilinearMap& form) {
  if (!form.scalar()) throw InvalidArgument("form is not scalar-valued");
  if (form.domain.size() < 2)
    throw InvalidArgument("form needs at least two domain factors");
  std::vector<NormedSpace> d(form.domain.begin(), form.domain.end() - 1);
  return MultilinearMap(std::move(d), form.domain.back().dual(), form.coeffs);
}

MultilinearMap compose(const LinearMap& t, const MultilinearMap& a,
                       const std::vector<LinearMap>& us) {
  const std::size_t n = a.order();
  if (us.size() != n) throw DimensionMismatch("one operator per domain factor");
  if (t.from.dim() != a.codomain.dim())
    throw DimensionMismatch("outer operator does not match the codomain");
  auto dims = coeff_dims(a.domain, a.codomain);
  std::vector<double> cur = a.coeffs;
  std::vector<NormedSpace> dom;
  for (std::size_t l = 0; l < n; ++l) {
    const auto& u = us[l];
    if (u.to.dim() != a.domain[l].dim())
      throw DimensionMismatch("operator range does not match domain factor " +
                              std::to_string(l));
    const std::size_t rows = u.from.dim(), cols = u.to.dim();
    std::vector<double> mt(rows * cols);
    for (std::size_t r = 0; r < cols; ++r)
      for (std::size_t c = 0; c < rows; ++c) mt[c * cols + r] = u.matrix[r * rows + c];
    cur = kernels::mode_product(cur, dims, l, mt, rows);
    dims[l] = rows;
    dom.push_back(u.from);
  }
  cur = kernels::mode_product(cur, dims, n, t.matrix, t.to.dim());
  return MultilinearMap(std::move(dom), t.to, std::move(cur));
}

MultilinearMap random_map(const std::vector<NormedSpace>& domain,
                          const NormedSpace& codomain, std::uint64_t seed) {
  Rng rng(stream_seed(seed, 0x3a9));
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> c(product(coeff_dims(domain, codomain)));
  for (double& x : c) x = g(rng);
  return MultilinearMap(domain, codomain, std::move(c));
}

PropertyBReport property_B_check(const TensorNormEvaluator& beta,
                                 const std::vector<NormedSpace>& spaces,
                                 std::size_t samples, std::uint64_t seed,
                                 Exec exec) {
  auto with_k = spaces;
  with_k.push_back(NormedSpace::scalars());
  PropertyBReport r;
  r.full.resize(samples);
  r.reduced.resize(samples);
  r.deviation.resize(samples);
  kernels::for_each_index(samples, exec, [&](std::size_t s) {
    const auto a = random_map(with_k, NormedSpace::scalars(), stream_seed(seed, s));
    r.full[s] = linearization_norm(a, beta).value();
    r.reduced[s] = linearization_norm(one_adjunction(a), beta).value();
    const double diff = std::abs(r.full[s] - r.reduced[s]);
    r.deviation[s] = r.reduced[s] > 0.0 ? diff / r.reduced[s] : diff;
  });
  for (double d : r.deviation) r.max_deviation = std::max(r.max_deviation, d);
  return r;
}

}  // namespace tnl

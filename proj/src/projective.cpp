#include "tnl/projective.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "tnl/kernels.hpp"

namespace tnl {

namespace {

using Tuple = std::vector<std::vector<double>>;

struct SupNorm {
  double value = 0.0;
  Tuple functionals;
};

// Multilinear sup norm of the form with coefficients `a` acting on `space`:
// the injective norm of a over the dual factors. A brute-force certificate
// replaces the search value when one is affordable.
SupNorm sup_norm_of(const TensorSpace& dual, const std::vector<double>& a,
                    const EpsilonConfig& cfg, const std::vector<Tuple>& warm) {
  const Tensor t(dual, a);
  auto s = epsilon_search(t, cfg, warm);
  SupNorm out{s.value, std::move(s.functionals)};
  if (cfg.certify && epsilon_exact_available(dual, cfg.brute_budget))
    out.value = std::max(out.value, epsilon_bruteforce(t, cfg).upper);
  return out;
}

// Form dual to a decomposition: with G the matrix whose columns are the
// outer products of the non-free vectors, A pairs the pseudo-inverse rows of
// G with norming functionals of the free vectors, weighted by the non-free
// norms, so <A, z> equals the decomposition cost when G has full column rank.
std::vector<double> dual_form(const TensorSpace& space, const Decomposition& d) {
  const std::size_t n = space.order();
  const auto dims = space.dims();
  const std::size_t L = free_factor(space);
  const std::size_t rows = space.total() / dims[L];
  const std::size_t R = d.terms.size();
  Eigen::MatrixXd G(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(R));
  std::vector<double> w(R, 1.0);
  Tuple phi(R);
  const NormedSpace free_dual = space.factor(L).dual();
  for (std::size_t j = 0; j < R; ++j) {
    const auto& t = d.terms[j];
    kernels::Factors xs;
    for (std::size_t l = 0; l < n; ++l) {
      if (l == L) continue;
      xs.push_back(t.vectors[l]);
      w[j] *= space.factor(l).norm(t.vectors[l]);
    }
    const auto col = kernels::outer(xs);
    for (std::size_t r = 0; r < rows; ++r)
      G(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = col[r];
    std::vector<double> y(t.vectors[L]);
    for (double& v : y) v *= t.lambda;
    phi[j] = free_dual.maximize_linear(y).argmax;
  }
  const Eigen::MatrixXd H = G.completeOrthogonalDecomposition().pseudoInverse();
  std::vector<double> a(space.total(), 0.0);
  std::vector<std::size_t> idx(n, 0);
  for (std::size_t f = 0; f < a.size(); ++f) {
    std::size_t row = 0;
    for (std::size_t l = 0; l < n; ++l)
      if (l != L) row = row * dims[l] + idx[l];
    double s = 0.0;
    for (std::size_t j = 0; j < R; ++j)
      s += w[j] * H(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(row)) *
           phi[j][idx[L]];
    a[f] = s;
    for (std::size_t l = n; l-- > 0;) {
      if (++idx[l] < dims[l]) break;
      idx[l] = 0;
    }
  }
  return a;
}

double l2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

}  // namespace

double pi_cost(const TensorSpace& space, const Decomposition& d) {
  double s = 0.0;
  for (const auto& t : d.terms) {
    double v = std::abs(t.lambda);
    for (std::size_t l = 0; l < t.vectors.size(); ++l)
      v *= space.factor(l).norm(t.vectors[l]);
    s += v;
  }
  return s;
}

DecompositionResult pi_upper(const Tensor& z, const SearchConfig& cfg) {
  const TensorSpace& space = z.space;
  return free_factor_search(
      z, cfg, [&space](const Decomposition& d) { return pi_cost(space, d); });
}

double pi_lower(const Tensor& z, const PiConfig& cfg, const Decomposition* hint,
                double cap) {
  const double scale = z.max_abs();
  if (scale == 0.0) return 0.0;
  std::vector<double> zn(z.coeffs);
  for (double& x : zn) x /= scale;
  const TensorSpace dual = z.space.dual();
  const std::size_t n = z.space.order();

  // Product of injective maximizers: a form of sup norm prod ||f_l||.
  const auto inj = epsilon_search(Tensor(z.space, zn), cfg.sup);
  std::vector<double> best = kernels::outer(inj.functionals);
  double fnorm = 1.0;
  for (std::size_t l = 0; l < n; ++l) fnorm *= dual.factor(l).norm(inj.functionals[l]);
  double ratio = fnorm > 0.0 ? std::abs(dot(best, zn)) / fnorm : 0.0;
  if (fnorm > 0.0)
    for (double& a : best) a /= fnorm;
  Tuple best_fs = inj.functionals;

  if (hint != nullptr && !hint->terms.empty()) {
    Decomposition h = *hint;
    for (auto& t : h.terms) t.lambda /= scale;
    auto a = dual_form(z.space, h);
    const auto s = sup_norm_of(dual, a, cfg.sup, {best_fs});
    if (s.value > 0.0) {
      const double r = std::abs(dot(a, zn)) / s.value;
      if (r > ratio) {
        ratio = r;
        for (double& x : a) x /= s.value;
        best = std::move(a);
        best_fs = s.functionals;
      }
    }
  }
  if (dot(best, zn) < 0.0)
    for (double& a : best) a = -a;

  // Ascent on <A, z> / ||A||; the gradient of the sup norm at A is the
  // product of its maximizing functionals.
  double eta = 0.5;
  for (int it = 0; it < cfg.ascent_iters; ++it) {
    const auto g = kernels::outer(best_fs);
    const double sgn = dot(best, g) < 0.0 ? -1.0 : 1.0;
    std::vector<double> dir(zn.size());
    for (std::size_t i = 0; i < dir.size(); ++i)
      dir[i] = zn[i] - ratio * sgn * g[i];
    const double nd = l2(dir);
    if (nd == 0.0) break;
    const double step = eta * l2(best) / nd;
    std::vector<double> cand(best);
    for (std::size_t i = 0; i < cand.size(); ++i) cand[i] += step * dir[i];
    const auto s = sup_norm_of(dual, cand, cfg.sup, {best_fs});
    const double r = s.value > 0.0 ? dot(cand, zn) / s.value : 0.0;
    if (r > ratio) {
      ratio = r;
      for (double& x : cand) x /= s.value;
      best = std::move(cand);
      best_fs = s.functionals;
      eta *= 1.5;
    } else {
      eta *= 0.5;
    }
  }
  return std::min(ratio * scale, cap);
}

NormEstimate pi_estimate(const Tensor& z, const PiConfig& cfg) {
  if (z.is_zero()) return NormEstimate::exact(0.0, cfg.search.seed);
  const auto up = pi_upper(z, cfg.search);
  NormEstimate e;
  e.upper = up.value;
  e.lower = pi_lower(z, cfg, up.feasible ? &up.decomposition : nullptr, e.upper);
  e.converged = up.feasible && e.upper - e.lower <= cfg.tol * e.upper;
  e.iterations = up.restart;
  e.seed = cfg.search.seed;
  return e;
}

double pi_matrix_oracle(const Tensor& z) {
  if (z.space.order() != 2)
    throw InvalidArgument("matrix oracle needs exactly two factors");
  for (const auto& f : z.space.factors())
    if (f.p() != 2.0 || f.is_weighted())
      throw InvalidArgument("matrix oracle needs unweighted l2 factors");
  const auto d = z.space.dims();
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      m(z.coeffs.data(), static_cast<Eigen::Index>(d[0]),
        static_cast<Eigen::Index>(d[1]));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues().sum();
}

}  // namespace tnl

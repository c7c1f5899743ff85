#include "tnl/sigma.hpp"

#include <algorithm>
#include <cmath>

#include "tnl/kernels.hpp"

namespace tnl {

ConjugatePair ConjugatePair::of(double p) {
  if (!(p >= 1.0)) throw InvalidArgument("exponent p must be >= 1");
  return {p, conjugate(p)};
}

namespace {

using Tuple = std::vector<std::vector<double>>;

double lp_sum(std::span<const double> v, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x), p);
  return std::pow(s, 1.0 / p);
}

// values[l][j] = f_l(x_lj)
using Values = std::vector<std::vector<double>>;

Values member_values(const Decomposition& d, const Tuple& fs) {
  Values v(fs.size(), std::vector<double>(d.terms.size()));
  for (std::size_t l = 0; l < fs.size(); ++l)
    for (std::size_t j = 0; j < d.terms.size(); ++j)
      v[l][j] = dot(fs[l], d.terms[j].vectors[l]);
  return v;
}

// sum_j |lambda_j prod_l v_lj|^p (p finite).
double objective(const Decomposition& d, const Values& v, double p) {
  double s = 0.0;
  for (std::size_t j = 0; j < d.terms.size(); ++j) {
    double a = d.terms[j].lambda;
    for (std::size_t l = 0; l < v.size(); ++l) a *= v[l][j];
    s += std::pow(std::abs(a), p);
  }
  return s;
}

std::vector<double> pinned(const NormedSpace& dual) {
  return dual.maximize_linear(std::vector<double>{1.0}).argmax;
}

struct Ascent {
  double value = 0.0;  // objective, not yet raised to 1/p
  Tuple fs;
};

Ascent ascend(const Decomposition& d, const std::vector<NormedSpace>& duals,
              double p, Tuple fs, const ModulusConfig& cfg) {
  const std::size_t n = duals.size();
  const std::size_t m = d.terms.size();
  Values v = member_values(d, fs);
  double prev = objective(d, v, p);
  int stall = 0;
  for (int sweep = 0; sweep < cfg.max_iters; ++sweep) {
    for (std::size_t l = 0; l < n; ++l) {
      if (duals[l].dim() == 1) continue;
      std::vector<double> g(duals[l].dim(), 0.0);
      for (std::size_t j = 0; j < m; ++j) {
        double a = d.terms[j].lambda;
        for (std::size_t k = 0; k < n; ++k)
          if (k != l) a *= v[k][j];
        const double vl = v[l][j];
        const double w = std::pow(std::abs(a), p) *
                         (p == 1.0 ? 1.0 : std::pow(std::abs(vl), p - 1.0)) *
                         (vl < 0.0 ? -1.0 : 1.0);
        if (w == 0.0) continue;
        const auto& x = d.terms[j].vectors[l];
        for (std::size_t i = 0; i < g.size(); ++i) g[i] += w * x[i];
      }
      if (std::all_of(g.begin(), g.end(), [](double x) { return x == 0.0; }))
        continue;
      fs[l] = duals[l].maximize_linear(g).argmax;
      for (std::size_t j = 0; j < m; ++j)
        v[l][j] = dot(fs[l], d.terms[j].vectors[l]);
    }
    const double cur = objective(d, v, p);
    if (cur - prev <= cfg.tol * std::max(cur, 1e-300)) {
      if (++stall >= 2) {
        prev = std::max(prev, cur);
        break;
      }
    } else {
      stall = 0;
    }
    prev = std::max(prev, cur);
  }
  return {prev, std::move(fs)};
}

bool exact_modulus_available(const std::vector<NormedSpace>& duals,
                             std::size_t budget) {
  std::size_t count = 1;
  for (const auto& d : duals) {
    if (d.dim() == 1) continue;
    const std::size_t k = extreme_point_count(d);
    if (k == 0 || count > budget / k) return false;
    count *= k;
  }
  return true;
}

Ascent enumerate(const Decomposition& d, const std::vector<NormedSpace>& duals,
                 double p) {
  const std::size_t n = duals.size();
  std::vector<Tuple> points(n);
  for (std::size_t l = 0; l < n; ++l) {
    if (duals[l].dim() == 1) {
      points[l].push_back(pinned(duals[l]));
    } else {
      for (auto& e : extreme_points(duals[l]))
        points[l].push_back(std::move(e.coords));
    }
  }
  std::vector<std::size_t> idx(n, 0);
  Tuple fs(n);
  Ascent best{-1.0, {}};
  while (true) {
    for (std::size_t l = 0; l < n; ++l) fs[l] = points[l][idx[l]];
    const double val = objective(d, member_values(d, fs), p);
    if (val > best.value) best = {val, fs};
    std::size_t l = n;
    while (l-- > 0) {
      if (++idx[l] < points[l].size()) break;
      idx[l] = 0;
    }
    if (l == static_cast<std::size_t>(-1)) break;
  }
  return best;
}

}  // namespace

ModulusResult family_modulus_p(const TensorSpace& space,
                               const Decomposition& family, double p,
                               const ModulusConfig& cfg,
                               const std::vector<Tuple>& warm) {
  if (family.terms.empty()) throw InvalidArgument("empty family");
  if (!(p >= 1.0)) throw InvalidArgument("exponent p must be >= 1");
  if (cfg.restarts < 1) throw InvalidArgument("restarts must be >= 1");
  const std::size_t n = space.order();
  for (const auto& t : family.terms) {
    if (t.vectors.size() != n)
      throw DimensionMismatch("family member has the wrong number of vectors");
    for (std::size_t l = 0; l < n; ++l)
      if (t.vectors[l].size() != space.factor(l).dim())
        throw DimensionMismatch("family vector does not match factor " +
                                std::to_string(l));
  }
  std::vector<NormedSpace> duals;
  for (const auto& f : space.factors()) duals.push_back(f.dual());

  ModulusResult out;
  if (std::isinf(p)) {
    // The sup of a maximum is the maximum of the per-member sups.
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t j = 0; j < family.terms.size(); ++j) {
      double c = std::abs(family.terms[j].lambda);
      for (std::size_t l = 0; l < n; ++l)
        c *= space.factor(l).norm(family.terms[j].vectors[l]);
      if (c > best) {
        best = c;
        arg = j;
      }
    }
    out.value = best;
    for (std::size_t l = 0; l < n; ++l)
      out.functionals.push_back(
          duals[l].maximize_linear(family.terms[arg].vectors[l]).argmax);
    out.exact = true;
    return out;
  }

  if (cfg.exact && exact_modulus_available(duals, cfg.brute_budget)) {
    auto e = enumerate(family, duals, p);
    out.value = std::pow(std::max(e.value, 0.0), 1.0 / p);
    out.functionals = std::move(e.fs);
    out.exact = true;
    return out;
  }

  Ascent best{-1.0, {}};
  const std::size_t total = static_cast<std::size_t>(cfg.restarts) + warm.size();
  for (std::size_t r = 0; r < total; ++r) {
    Tuple fs(n);
    if (r < warm.size()) {
      fs = warm[r];
      if (fs.size() != n) throw DimensionMismatch("warm start tuple size");
      for (std::size_t l = 0; l < n; ++l) {
        if (fs[l].size() != duals[l].dim())
          throw DimensionMismatch("warm start functional size");
        if (duals[l].dim() == 1) fs[l] = pinned(duals[l]);
      }
    } else {
      for (std::size_t l = 0; l < n; ++l) {
        if (duals[l].dim() == 1) {
          fs[l] = pinned(duals[l]);
          continue;
        }
        Rng rng(stream_seed(cfg.seed, r - warm.size(), l, 0x3a));
        const std::size_t k = extreme_point_count(duals[l]);
        if (k > 0 && k <= 64) {
          std::uniform_int_distribution<std::size_t> pick(0, k - 1);
          fs[l] = extreme_points(duals[l])[pick(rng)].coords;
        } else {
          fs[l] = random_unit(duals[l], rng);
        }
      }
    }
    auto a = ascend(family, duals, p, std::move(fs), cfg);
    if (a.value > best.value) best = std::move(a);
  }
  out.value = std::pow(std::max(best.value, 0.0), 1.0 / p);
  out.functionals = std::move(best.fs);
  return out;
}

double sigma_cost(const TensorSpace& space, const Decomposition& d,
                  const SigmaConfig& cfg, const std::vector<Tuple>& warm) {
  const std::size_t n = space.order();
  const auto cp = ConjugatePair::of(cfg.p);
  Decomposition fam;
  for (const auto& t : d.terms) {
    if (t.lambda == 0.0) continue;
    bool zero = false;
    for (const auto& v : t.vectors)
      zero = zero || std::all_of(v.begin(), v.end(),
                                 [](double x) { return x == 0.0; });
    if (!zero) fam.terms.push_back(t);
  }
  if (fam.terms.empty()) return 0.0;
  const std::size_t m = fam.terms.size();
  if (std::isinf(cp.p)) {
    double s = 0.0;
    for (const auto& t : fam.terms) {
      double c = std::abs(t.lambda);
      for (std::size_t l = 0; l < n; ++l) c *= space.factor(l).norm(t.vectors[l]);
      s += c;
    }
    return s;
  }
  // Fold the coefficients into the vectors' weights: member j carries
  // weight t_j and coefficient 1/t_j.
  std::vector<double> base(m);
  for (std::size_t j = 0; j < m; ++j) base[j] = fam.terms[j].lambda;
  std::vector<double> t(m, 1.0);
  std::vector<Tuple> starts(warm);
  double best = kInf;
  const int rounds = cp.p == 1.0 ? 1 : std::max(1, cfg.weight_iters);
  for (int it = 0; it < rounds; ++it) {
    Decomposition scaled = fam;
    std::vector<double> inv(m);
    for (std::size_t j = 0; j < m; ++j) {
      scaled.terms[j].lambda = std::abs(base[j]) * t[j];
      inv[j] = 1.0 / t[j];
    }
    const auto mod = family_modulus_p(space, scaled, cp.p, cfg.modulus, starts);
    best = std::min(best, lp_sum(inv, cp.q) * mod.value);
    starts.push_back(mod.functionals);
    std::vector<double> c(m);
    double cmax = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      double a = std::abs(base[j]);
      for (std::size_t l = 0; l < n; ++l)
        a *= dot(mod.functionals[l], fam.terms[j].vectors[l]);
      c[j] = std::abs(a);
      cmax = std::max(cmax, c[j]);
    }
    if (cmax == 0.0) break;
    const double expo = -cp.p / (cp.p + cp.q);
    double tmax = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      t[j] = std::pow(std::max(c[j], 1e-12 * cmax) / cmax, expo);
      tmax = std::max(tmax, t[j]);
    }
    for (double& x : t) x /= tmax;
  }
  return best;
}

namespace {

DecompositionResult upper_from(const Tensor& z, const SigmaConfig& cfg,
                               const EpsilonSearch* eps) {
  ConjugatePair::of(cfg.p);
  const TensorSpace& space = z.space;
  std::vector<Tuple> warm;
  if (eps != nullptr) warm.push_back(eps->functionals);
  return free_factor_search(z, cfg.search, [&](const Decomposition& d) {
    return sigma_cost(space, d, cfg, warm);
  });
}

}  // namespace

DecompositionResult sigma_p_upper(const Tensor& z, const SigmaConfig& cfg) {
  if (z.is_zero()) return upper_from(z, cfg, nullptr);
  const auto eps = epsilon_search(z, cfg.eps);
  return upper_from(z, cfg, &eps);
}

NormEstimate sigma_p_estimate(const Tensor& z, const SigmaConfig& cfg) {
  if (z.is_zero()) return NormEstimate::exact(0.0, cfg.search.seed);
  const auto eps = epsilon_search(z, cfg.eps);
  const auto up = upper_from(z, cfg, &eps);
  NormEstimate e;
  e.upper = up.value;
  e.lower = std::min(eps.value, e.upper);
  e.converged = up.feasible;
  e.iterations = up.restart;
  e.seed = cfg.search.seed;
  return e;
}

// ---------------------------------------------------------------------------

namespace {

double form_value(const Tensor& a, const std::vector<std::vector<double>>& xs) {
  return kernels::contract(a.coeffs, a.space.dims(), xs)[0];
}

struct RatioEval {
  double ratio = 0.0;
  Tuple functionals;
};

RatioEval ratio_of(const Tensor& a, const Decomposition& fam, double p,
                   const ModulusConfig& mcfg, const std::vector<Tuple>& warm) {
  std::vector<double> vals;
  for (const auto& t : fam.terms) vals.push_back(t.lambda * form_value(a, t.vectors));
  const double num = lp_sum(vals, p);
  const auto mod = family_modulus_p(a.space, fam, p, mcfg, warm);
  RatioEval r;
  r.functionals = mod.functionals;
  r.ratio = mod.value > 0.0 ? num / mod.value : 0.0;
  return r;
}

}  // namespace

double semi_integral_ratio(const Tensor& a, const Decomposition& family,
                           double p, const ModulusConfig& mcfg) {
  return ratio_of(a, family, p, mcfg, {}).ratio;
}

SigmaDualResult sigma_p_dual(const Tensor& a, const SigmaDualConfig& cfg) {
  ConjugatePair::of(cfg.p);
  SigmaDualResult out;
  out.estimate.seed = cfg.seed;
  const double scale = a.max_abs();
  if (scale == 0.0) {
    out.estimate = NormEstimate::exact(0.0, cfg.seed);
    return out;
  }
  std::vector<double> c(a.coeffs);
  for (double& x : c) x /= scale;
  const Tensor an(a.space, std::move(c));
  const std::size_t n = a.space.order();
  const auto dims = a.space.dims();

  // Starting families: the sup-norm maximizer as a single member, the
  // coordinate grid (when small), then random families.
  std::vector<Decomposition> starts;
  {
    const auto s = epsilon_search(Tensor(a.space.dual(), an.coeffs), cfg.sup);
    starts.push_back({{{1.0, s.functionals}}});
  }
  if (a.space.total() <= 64) {
    Decomposition grid;
    std::vector<std::size_t> idx(n, 0);
    for (std::size_t f = 0; f < a.space.total(); ++f) {
      Decomposition::Term t;
      for (std::size_t l = 0; l < n; ++l) {
        std::vector<double> e(dims[l], 0.0);
        e[idx[l]] = 1.0;
        t.vectors.push_back(std::move(e));
      }
      grid.terms.push_back(std::move(t));
      for (std::size_t l = n; l-- > 0;) {
        if (++idx[l] < dims[l]) break;
        idx[l] = 0;
      }
    }
    starts.push_back(std::move(grid));
  }
  for (int r = 0; r < cfg.restarts; ++r) {
    Decomposition fam;
    for (std::size_t j = 0; j < std::max<std::size_t>(cfg.family_size, 1); ++j) {
      Decomposition::Term t;
      for (std::size_t l = 0; l < n; ++l) {
        if (dims[l] == 1) {
          t.vectors.push_back({1.0});
          continue;
        }
        Rng rng(stream_seed(cfg.seed, static_cast<std::uint64_t>(r), j, l));
        t.vectors.push_back(random_unit(a.space.factor(l), rng));
      }
      fam.terms.push_back(std::move(t));
    }
    starts.push_back(std::move(fam));
  }

  std::vector<std::pair<double, Decomposition>> results(starts.size());
  kernels::for_each_index(starts.size(), cfg.exec, [&](std::size_t s) {
    Decomposition fam = starts[s];
    auto cur = ratio_of(an, fam, cfg.p, cfg.modulus, {});
    Rng rng(stream_seed(cfg.seed, s, 0x51d));
    std::normal_distribution<double> g(0.0, 1.0);
    double step = 0.3;
    for (int it = 0; it < cfg.refine_iters && step > 1e-6; ++it) {
      Decomposition delta = fam;
      for (auto& t : delta.terms)
        for (std::size_t l = 0; l < n; ++l)
          for (double& x : t.vectors[l]) x = dims[l] == 1 ? 0.0 : g(rng);
      bool accepted = false;
      for (double sgn : {1.0, -1.0}) {
        Decomposition cand = fam;
        for (std::size_t j = 0; j < cand.terms.size(); ++j)
          for (std::size_t l = 0; l < n; ++l) {
            auto& v = cand.terms[j].vectors[l];
            const double nv = std::sqrt(dot(v, v));
            const double w = nv > 0.0 ? nv : 1.0;
            for (std::size_t i = 0; i < v.size(); ++i)
              v[i] += sgn * step * w * delta.terms[j].vectors[l][i];
          }
        auto r = ratio_of(an, cand, cfg.p, cfg.modulus, {cur.functionals});
        if (r.ratio > cur.ratio) {
          cur = std::move(r);
          fam = std::move(cand);
          accepted = true;
          break;
        }
      }
      step = accepted ? std::min(1.0, step * 1.5) : step * 0.5;
    }
    results[s] = {cur.ratio, std::move(fam)};
  });
  // The search ascends on the ratio, so it favours families whose modulus
  // ascent fell short. Re-evaluate every result with a larger budget, warm
  // started from the functionals norming each member.
  ModulusConfig strong = cfg.modulus;
  strong.restarts = 4 * std::max(cfg.modulus.restarts, 1);
  strong.max_iters = 10 * std::max(cfg.modulus.max_iters, 1);
  strong.seed = stream_seed(cfg.modulus.seed, 0x5e1f);
  kernels::for_each_index(results.size(), cfg.exec, [&](std::size_t s) {
    std::vector<Tuple> warm;
    for (const auto& t : results[s].second.terms) {
      Tuple fs;
      for (std::size_t l = 0; l < n; ++l)
        fs.push_back(a.space.factor(l).dual().maximize_linear(t.vectors[l]).argmax);
      warm.push_back(std::move(fs));
    }
    const double checked = ratio_of(an, results[s].second, cfg.p, strong, warm).ratio;
    results[s].first = std::min(results[s].first, checked);
  });
  std::size_t best = 0;
  for (std::size_t s = 1; s < results.size(); ++s)
    if (results[s].first > results[best].first) best = s;
  out.estimate.lower = results[best].first * scale;
  out.estimate.upper = kInf;
  out.estimate.converged = false;
  out.estimate.iterations = cfg.refine_iters;
  out.family = std::move(results[best].second);
  return out;
}

}  // namespace tnl

#include <algorithm>
#include <cmath>

#include "tnl/kernels.hpp"
#include "tnl/multilinear.hpp"

namespace tnl {

namespace {

using Families = std::vector<std::vector<std::vector<double>>>;

double numerator(const MultilinearMap& a, const Families& fams, double p) {
  const std::size_t n = fams.size();
  std::vector<std::size_t> idx(n, 0);
  double acc = 0.0;
  while (true) {
    std::vector<std::vector<double>> xs;
    for (std::size_t l = 0; l < n; ++l) xs.push_back(fams[l][idx[l]]);
    const double v = a.codomain.norm(a.apply(xs));
    acc = std::isinf(p) ? std::max(acc, v) : acc + std::pow(v, p);
    std::size_t l = n;
    while (l-- > 0) {
      if (++idx[l] < fams[l].size()) break;
      idx[l] = 0;
    }
    if (l == static_cast<std::size_t>(-1)) break;
  }
  return std::isinf(p) ? acc : std::pow(acc, 1.0 / p);
}

}  // namespace

double summing_ratio(const MultilinearMap& a, const Families& families,
                     double p, double q, const FormBallConfig& cfg) {
  if (families.size() != a.order())
    throw DimensionMismatch("one family per domain factor is required");
  for (const auto& f : families)
    if (f.empty()) throw InvalidArgument("empty family");
  const double den = form_ball_modulus(TensorSpace(a.domain), families, q, cfg);
  return den > 0.0 ? numerator(a, families, p) / den : 0.0;
}

SummingResult sm_pq_norm(const MultilinearMap& a, const SummingConfig& cfg) {
  if (!(cfg.q >= 1.0) || !(cfg.p >= cfg.q))
    throw InvalidArgument("sm(p,q) needs p >= q >= 1");
  if (cfg.family_budget < 1) throw InvalidArgument("family budget must be >= 1");
  SummingResult out;
  const double scale = *std::max_element(
      a.coeffs.begin(), a.coeffs.end(),
      [](double x, double y) { return std::abs(x) < std::abs(y); });
  if (scale == 0.0) {
    out.estimate = NormEstimate::exact(0.0, cfg.seed);
    return out;
  }
  std::vector<double> c(a.coeffs);
  for (double& x : c) x /= std::abs(scale);
  const MultilinearMap an(a.domain, a.codomain, std::move(c));
  const std::size_t n = an.order();

  const auto sup = sup_norm(an, cfg.sup);
  std::vector<Families> starts;
  {
    Families f(n);
    for (std::size_t l = 0; l < n; ++l) f[l].push_back(sup.argmax[l]);
    starts.push_back(std::move(f));
  }
  {
    Families f(n);
    for (std::size_t l = 0; l < n; ++l) {
      const std::size_t d = an.domain[l].dim();
      for (std::size_t i = 0; i < std::min(d, cfg.family_budget); ++i) {
        std::vector<double> e(d, 0.0);
        e[i] = 1.0;
        f[l].push_back(std::move(e));
      }
    }
    starts.push_back(std::move(f));
  }
  for (int r = 0; r < cfg.restarts; ++r) {
    Families f(n);
    for (std::size_t l = 0; l < n; ++l) {
      const std::size_t d = an.domain[l].dim();
      const std::size_t size = d == 1 ? 1 : cfg.family_budget;
      for (std::size_t j = 0; j < size; ++j) {
        if (d == 1) {
          f[l].push_back({1.0});
          continue;
        }
        Rng rng(stream_seed(cfg.seed, static_cast<std::uint64_t>(r), j, l));
        f[l].push_back(random_unit(an.domain[l], rng));
      }
    }
    starts.push_back(std::move(f));
  }

  std::vector<std::pair<double, Families>> results(starts.size());
  kernels::for_each_index(starts.size(), cfg.exec, [&](std::size_t s) {
    Families fam = starts[s];
    double cur = summing_ratio(an, fam, cfg.p, cfg.q, cfg.ball);
    Rng rng(stream_seed(cfg.seed, s, 0x5e9));
    std::normal_distribution<double> g(0.0, 1.0);
    double step = 0.3;
    for (int it = 0; it < cfg.refine_iters && step > 1e-6; ++it) {
      Families delta = fam;
      for (std::size_t l = 0; l < n; ++l)
        for (auto& v : delta[l])
          for (double& x : v) x = an.domain[l].dim() == 1 ? 0.0 : g(rng);
      bool accepted = false;
      for (double sgn : {1.0, -1.0}) {
        Families cand = fam;
        for (std::size_t l = 0; l < n; ++l)
          for (std::size_t j = 0; j < cand[l].size(); ++j) {
            auto& v = cand[l][j];
            const double nv = std::sqrt(dot(v, v));
            const double w = nv > 0.0 ? nv : 1.0;
            for (std::size_t i = 0; i < v.size(); ++i)
              v[i] += sgn * step * w * delta[l][j][i];
          }
        const double r = summing_ratio(an, cand, cfg.p, cfg.q, cfg.ball);
        if (r > cur) {
          cur = r;
          fam = std::move(cand);
          accepted = true;
          break;
        }
      }
      step = accepted ? std::min(1.0, step * 1.5) : step * 0.5;
    }
    results[s] = {cur, std::move(fam)};
  });
  std::size_t best = 0;
  for (std::size_t s = 1; s < results.size(); ++s)
    if (results[s].first > results[best].first) best = s;
  // A single member already witnesses the sup norm.
  out.estimate.lower =
      std::max(results[best].first, sup.estimate.lower) * std::abs(scale);
  out.estimate.upper = kInf;
  out.estimate.iterations = cfg.refine_iters;
  out.estimate.seed = cfg.seed;
  out.families = std::move(results[best].second);
  return out;
}

}  // namespace tnl

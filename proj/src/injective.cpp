#include "tnl/injective.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "tnl/kernels.hpp"

namespace tnl {

namespace {

using Tuple = std::vector<std::vector<double>>;

// One-dimensional factors only contribute a sign, so their functional is
// pinned to the positive extreme point and never searched.
std::vector<double> pinned_functional(const NormedSpace& dual) {
  return dual.maximize_linear(std::vector<double>{1.0}).argmax;
}

std::vector<double> initial_functional(const NormedSpace& dual, Rng& rng) {
  if (dual.dim() == 1) return pinned_functional(dual);
  const std::size_t count = extreme_point_count(dual);
  if (count > 0 && count <= 64) {
    std::uniform_int_distribution<std::size_t> pick(0, count - 1);
    return extreme_points(dual)[pick(rng)].coords;
  }
  return random_unit(dual, rng);
}

struct RestartResult {
  double value = 0.0;
  Tuple fs;
  bool converged = false;
  int sweeps = 0;
};

RestartResult ascend(const std::vector<double>& coeffs,
                     const std::vector<std::size_t>& dims,
                     const std::vector<NormedSpace>& duals, Tuple fs,
                     const EpsilonConfig& cfg) {
  const std::size_t n = dims.size();
  RestartResult r;
  double prev = -1.0;
  int stall = 0;
  for (int sweep = 1; sweep <= cfg.max_iters; ++sweep) {
    double value = -1.0;
    for (std::size_t l = 0; l < n; ++l) {
      if (dims[l] == 1) continue;
      const auto c = kernels::contract(coeffs, dims, fs, l);
      auto m = duals[l].maximize_linear(c);
      fs[l] = std::move(m.argmax);
      value = m.value;
    }
    if (value < 0.0) value = std::abs(kernels::contract(coeffs, dims, fs)[0]);
    r.sweeps = sweep;
    if (prev >= 0.0 && value - prev <= cfg.tol * std::max(value, 1e-300)) {
      if (++stall >= cfg.stall_sweeps) {
        r.converged = true;
        prev = std::max(prev, value);
        break;
      }
    } else {
      stall = 0;
    }
    prev = std::max(prev, value);
  }
  r.value = std::max(prev, 0.0);
  r.fs = std::move(fs);
  return r;
}

// Cube-surface lattice {-1, -1+2/N, ..., 1}^d with max |g_i| = 1, each point
// normalized in `space`.
std::vector<std::vector<double>> lattice(const NormedSpace& space, int N) {
  const std::size_t d = space.dim();
  std::vector<std::vector<double>> pts;
  std::vector<int> idx(d, 0);
  while (true) {
    std::vector<double> g(d);
    bool surface = false;
    for (std::size_t i = 0; i < d; ++i) {
      g[i] = -1.0 + 2.0 * idx[i] / N;
      if (idx[i] == 0 || idx[i] == N) surface = true;
    }
    if (surface) {
      const double nrm = space.norm(g);
      for (double& x : g) x /= nrm;
      pts.push_back(std::move(g));
    }
    std::size_t l = d;
    while (l-- > 0) {
      if (++idx[l] <= N) break;
      idx[l] = 0;
    }
    if (l == static_cast<std::size_t>(-1)) break;
  }
  return pts;
}

// Covering radius (in the space's own norm) of the normalized lattice.
double lattice_slack(const NormedSpace& space, int N) {
  if (space.dim() == 1) return 0.0;
  const std::vector<double> ones(space.dim(), 1.0);
  return 2.0 * space.norm(ones) * space.max_sup_coordinate() / N;
}

std::size_t closed_form_factor(const TensorSpace& space) {
  const std::size_t n = space.order();
  std::size_t best = n - 1;
  bool best_smooth = !space.factor(best).dual().polyhedral();
  for (std::size_t l = n; l-- > 0;) {
    const NormedSpace d = space.factor(l).dual();
    const bool smooth = !d.polyhedral();
    if (smooth && !best_smooth) {
      best = l;
      best_smooth = true;
    } else if (smooth == best_smooth) {
      const NormedSpace bd = space.factor(best).dual();
      const auto key = [&](const NormedSpace& s) {
        return smooth ? s.dim() : extreme_point_count(s);
      };
      if (key(d) > key(bd)) best = l;
    }
  }
  return best;
}

}  // namespace

EpsilonSearch epsilon_search(const Tensor& z, const EpsilonConfig& cfg,
                             const std::vector<Tuple>& warm) {
  if (cfg.restarts < 1) throw InvalidArgument("restarts must be >= 1");
  if (!(cfg.tol > 0.0)) throw InvalidArgument("tol must be positive");
  const std::size_t n = z.space.order();
  std::vector<NormedSpace> duals;
  for (const auto& f : z.space.factors()) duals.push_back(f.dual());
  const auto dims = z.space.dims();

  EpsilonSearch out;
  const double scale = z.max_abs();
  if (scale == 0.0) {
    for (std::size_t l = 0; l < n; ++l)
      out.functionals.push_back(duals[l].maximize_linear(
          std::vector<double>(dims[l], 0.0)).argmax);
    return out;
  }
  std::vector<double> coeffs(z.coeffs);
  for (double& x : coeffs) x /= scale;

  const std::size_t total = static_cast<std::size_t>(cfg.restarts) + warm.size();
  std::vector<RestartResult> results(total);
  kernels::for_each_index(total, cfg.exec, [&](std::size_t r) {
    Tuple fs;
    if (r < static_cast<std::size_t>(cfg.restarts)) {
      for (std::size_t l = 0; l < n; ++l) {
        Rng rng(stream_seed(cfg.seed, r, l));
        fs.push_back(initial_functional(duals[l], rng));
      }
    } else {
      fs = warm[r - static_cast<std::size_t>(cfg.restarts)];
      if (fs.size() != n) throw DimensionMismatch("warm start tuple size");
      for (std::size_t l = 0; l < n; ++l) {
        if (fs[l].size() != dims[l])
          throw DimensionMismatch("warm start functional size");
        if (dims[l] == 1) fs[l] = pinned_functional(duals[l]);
      }
    }
    results[r] = ascend(coeffs, dims, duals, std::move(fs), cfg);
  });

  std::size_t best = 0;
  for (std::size_t r = 1; r < total; ++r)
    if (results[r].value > results[best].value) best = r;
  out.value = results[best].value * scale;
  out.functionals = std::move(results[best].fs);
  out.converged = results[best].converged;
  out.iterations = results[best].sweeps;
  return out;
}

bool epsilon_exact_available(const TensorSpace& space, std::size_t budget) {
  const std::size_t c = closed_form_factor(space);
  std::size_t count = 1;
  for (std::size_t l = 0; l < space.order(); ++l) {
    if (l == c) continue;
    const NormedSpace d = space.factor(l).dual();
    const std::size_t k = d.dim() == 1 ? 1 : extreme_point_count(d);
    if (k == 0) return false;
    if (count > budget / k) return false;
    count *= k;
  }
  return true;
}

NormEstimate epsilon_bruteforce(const Tensor& z, const EpsilonConfig& cfg) {
  const std::size_t n = z.space.order();
  const auto dims = z.space.dims();
  const std::size_t c = closed_form_factor(z.space);
  std::vector<std::vector<std::vector<double>>> points(n);
  double slack = 0.0;
  std::size_t count = 1;
  for (std::size_t l = 0; l < n; ++l) {
    if (l == c) continue;
    const NormedSpace d = z.space.factor(l).dual();
    if (d.dim() == 1) {
      points[l].push_back(pinned_functional(d));
    } else if (d.polyhedral()) {
      for (auto& v : extreme_points(d)) points[l].push_back(std::move(v.coords));
    } else {
      if (cfg.grid_resolution <= 0)
        throw Unsupported("smooth dual ball on factor " + std::to_string(l) +
                          " needs grid_resolution > 0");
      points[l] = lattice(d, cfg.grid_resolution);
      slack += lattice_slack(d, cfg.grid_resolution);
    }
    if (count > cfg.brute_budget / points[l].size())
      throw BudgetExceeded("brute-force enumeration exceeds budget of " +
                           std::to_string(cfg.brute_budget));
    count *= points[l].size();
  }
  if (z.is_zero()) return NormEstimate::exact(0.0, cfg.seed);

  const NormedSpace& closed = z.space.factor(c);
  // Outer loop over the first enumerated factor so it can be split across
  // threads; each slot keeps its own max, merged in index order.
  std::size_t lead = 0;
  while (lead < n && (lead == c || points[lead].empty())) ++lead;
  const std::size_t lead_count = lead < n ? points[lead].size() : 1;
  std::vector<double> best(lead_count, 0.0);
  kernels::for_each_index(lead_count, cfg.exec, [&](std::size_t a) {
    kernels::Factors fs(n);
    std::vector<std::size_t> idx(n, 0);
    if (lead < n) idx[lead] = a;
    while (true) {
      for (std::size_t l = 0; l < n; ++l)
        if (l != c) fs[l] = points[l][idx[l]];
      fs[c].assign(dims[c], 0.0);
      const auto v = kernels::contract(z.coeffs, dims, fs, c);
      best[a] = std::max(best[a], closed.norm(v));
      std::size_t l = n;
      bool done = true;
      while (l-- > 0) {
        if (l == c || l == lead) continue;
        if (++idx[l] < points[l].size()) {
          done = false;
          break;
        }
        idx[l] = 0;
      }
      if (done) break;
    }
  });
  double lower = 0.0;
  for (double b : best) lower = std::max(lower, b);
  NormEstimate e;
  e.lower = lower;
  e.upper = slack == 0.0 ? lower : (slack < 1.0 ? lower / (1.0 - slack) : kInf);
  e.converged = slack == 0.0;
  e.iterations = static_cast<int>(std::min<std::size_t>(count, 1U << 30));
  e.seed = cfg.seed;
  return e;
}

NormEstimate epsilon_estimate(const Tensor& z, const EpsilonConfig& cfg) {
  if (z.is_zero()) return NormEstimate::exact(0.0, cfg.seed);
  const EpsilonSearch s = epsilon_search(z, cfg);
  NormEstimate e;
  e.lower = s.value;
  e.upper = kInf;
  e.converged = s.converged;
  e.iterations = s.iterations;
  e.seed = cfg.seed;
  if (cfg.certify && epsilon_exact_available(z.space, cfg.brute_budget)) {
    const NormEstimate b = epsilon_bruteforce(z, cfg);
    e.lower = std::max(e.lower, b.lower);
    e.upper = std::max(e.lower, b.upper);
  }
  return e;
}

double epsilon_matrix_oracle(const Tensor& z) {
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
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

}  // namespace tnl

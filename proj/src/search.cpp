#include "tnl/search.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "tnl/kernels.hpp"

namespace tnl {

std::size_t free_factor(const TensorSpace& space) {
  std::size_t best = 0;
  for (std::size_t l = 1; l < space.order(); ++l)
    if (space.factor(l).dim() > space.factor(best).dim()) best = l;
  return best;
}

std::size_t default_rank(const TensorSpace& space) {
  return space.total() / space.factor(free_factor(space)).dim();
}

namespace {

using Mat = Eigen::MatrixXd;
using Params = std::vector<kernels::Factors>;  // [term][other factor]

double l2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

std::vector<double> random_l2_unit(std::size_t d, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(d);
  double nv = 0.0;
  while (nv == 0.0) {
    for (double& x : v) x = g(rng);
    nv = l2(v);
  }
  for (double& x : v) x /= nv;
  return v;
}

class Layout {
 public:
  Layout(const Tensor& z, std::size_t rank, std::vector<double> normalized)
      : dims_(z.space.dims()), free_(free_factor(z.space)) {
    for (std::size_t l = 0; l < dims_.size(); ++l)
      if (l != free_) others_.push_back(l);
    rows_ = z.space.total() / dims_[free_];
    rank_ = rank == 0 ? rows_ : rank;
    Z_ = Mat::Zero(static_cast<Eigen::Index>(rows_),
                   static_cast<Eigen::Index>(dims_[free_]));
    std::vector<std::size_t> idx(dims_.size(), 0);
    for (std::size_t f = 0; f < normalized.size(); ++f) {
      std::size_t row = 0;
      for (std::size_t l : others_) row = row * dims_[l] + idx[l];
      Z_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(idx[free_])) =
          normalized[f];
      for (std::size_t l = dims_.size(); l-- > 0;) {
        if (++idx[l] < dims_[l]) break;
        idx[l] = 0;
      }
    }
  }

  std::size_t rank() const { return rank_; }
  std::size_t rows() const { return rows_; }
  std::size_t free() const { return free_; }
  const std::vector<std::size_t>& others() const { return others_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  bool pinned(std::size_t l) const { return dims_[l] == 1; }

  struct Candidate {
    bool feasible = false;
    double cost = kInf;
    double residual = kInf;
    Decomposition d;
  };

  Candidate evaluate(const Params& X, const DecompositionCost& cost,
                     double tol) const {
    Mat G(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(rank_));
    for (std::size_t j = 0; j < rank_; ++j) {
      const auto col = kernels::outer(X[j]);
      for (std::size_t r = 0; r < rows_; ++r)
        G(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = col[r];
    }
    const Mat Y = G.completeOrthogonalDecomposition().solve(Z_);
    Candidate c;
    c.residual = (G * Y - Z_).norm();
    if (!std::isfinite(c.residual)) c.residual = kInf;
    for (std::size_t j = 0; j < rank_; ++j) {
      Decomposition::Term t;
      t.lambda = 1.0;
      t.vectors.resize(dims_.size());
      for (std::size_t k = 0; k < others_.size(); ++k)
        t.vectors[others_[k]] = X[j][k];
      std::vector<double> y(dims_[free_]);
      for (std::size_t i = 0; i < y.size(); ++i)
        y[i] = Y(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
      t.vectors[free_] = std::move(y);
      c.d.terms.push_back(std::move(t));
    }
    if (c.residual < tol) {
      c.feasible = true;
      c.cost = cost(c.d);
      if (!std::isfinite(c.cost)) c.feasible = false;
    }
    return c;
  }

  Params coordinate_start(std::uint64_t seed, std::size_t restart) const {
    Params X(rank_);
    for (std::size_t j = 0; j < rank_; ++j) {
      std::size_t J = j;
      std::vector<std::size_t> sub(others_.size(), 0);
      for (std::size_t k = others_.size(); k-- > 0;) {
        sub[k] = J % dims_[others_[k]];
        J /= dims_[others_[k]];
      }
      for (std::size_t k = 0; k < others_.size(); ++k) {
        const std::size_t d = dims_[others_[k]];
        if (j < rows_) {
          std::vector<double> e(d, 0.0);
          e[sub[k]] = 1.0;
          X[j].push_back(std::move(e));
        } else {
          X[j].push_back(filler(seed, restart, j, others_[k]));
        }
      }
    }
    return X;
  }

  Params deflation_start(std::span<const double> coeffs, std::uint64_t seed,
                         std::size_t restart, int als_iters) const {
    const std::size_t n = dims_.size();
    std::vector<double> W(coeffs.begin(), coeffs.end());
    Params X(rank_);
    for (std::size_t j = 0; j < rank_; ++j) {
      if (l2(W) <= 1e-13) {
        for (std::size_t l : others_)
          X[j].push_back(filler(seed, restart, j, l));
        continue;
      }
      kernels::Factors x(n);
      for (std::size_t l = 0; l < n; ++l) {
        if (pinned(l)) {
          x[l] = {1.0};
        } else {
          Rng rng(stream_seed(seed, restart, j, l));
          x[l] = random_l2_unit(dims_[l], rng);
        }
      }
      double sigma = 0.0;
      for (int it = 0; it < als_iters; ++it) {
        for (std::size_t l = 0; l < n; ++l) {
          if (pinned(l)) continue;
          auto v = kernels::contract(W, dims_, x, l);
          const double nv = l2(v);
          if (nv > 0.0) {
            for (double& a : v) a /= nv;
            x[l] = std::move(v);
          }
        }
        const double s = kernels::contract(W, dims_, x)[0];
        const bool done = std::abs(s - sigma) <= 1e-15 * std::abs(s);
        sigma = s;
        if (done) break;
      }
      kernels::add_outer(W, x, -sigma);
      for (std::size_t l : others_) X[j].push_back(x[l]);
    }
    return X;
  }

  std::vector<double> filler(std::uint64_t seed, std::size_t restart,
                             std::size_t j, std::size_t l) const {
    if (pinned(l)) return {1.0};
    Rng rng(stream_seed(seed, restart, j, 0x1000 + l));
    return random_l2_unit(dims_[l], rng);
  }

 private:
  std::vector<std::size_t> dims_;
  std::size_t free_;
  std::vector<std::size_t> others_;
  std::size_t rows_ = 1;
  std::size_t rank_ = 1;
  Mat Z_;
};

// Random-direction descent with an adaptive step; only feasible strict
// improvements are accepted.
Layout::Candidate refine(const Layout& layout, Params X, Layout::Candidate cur,
                         const DecompositionCost& cost, const SearchConfig& cfg,
                         std::size_t restart) {
  if (!cur.feasible) return cur;
  Rng rng(stream_seed(cfg.seed, restart, 0x7e1f));
  std::normal_distribution<double> g(0.0, 1.0);
  double step = 0.2;
  for (int it = 0; it < cfg.refine_iters && step > 1e-7; ++it) {
    Params delta = X;
    bool any = false;
    for (std::size_t j = 0; j < X.size(); ++j)
      for (std::size_t k = 0; k < X[j].size(); ++k) {
        if (layout.pinned(layout.others()[k])) {
          std::fill(delta[j][k].begin(), delta[j][k].end(), 0.0);
          continue;
        }
        for (double& a : delta[j][k]) a = g(rng);
        any = true;
      }
    if (!any) break;
    bool accepted = false;
    for (double sgn : {1.0, -1.0}) {
      Params Y = X;
      for (std::size_t j = 0; j < X.size(); ++j)
        for (std::size_t k = 0; k < X[j].size(); ++k) {
          if (layout.pinned(layout.others()[k])) continue;
          auto& v = Y[j][k];
          for (std::size_t i = 0; i < v.size(); ++i)
            v[i] += sgn * step * delta[j][k][i];
          const double nv = l2(v);
          if (nv == 0.0) continue;
          for (double& a : v) a /= nv;
        }
      auto cand = layout.evaluate(Y, cost, cfg.residual_tol);
      if (cand.feasible && cand.cost < cur.cost) {
        X = std::move(Y);
        cur = std::move(cand);
        accepted = true;
        break;
      }
    }
    step = accepted ? std::min(1.0, step * 1.5) : step * 0.5;
  }
  return cur;
}

}  // namespace

DecompositionResult free_factor_search(const Tensor& z, const SearchConfig& cfg,
                                       const DecompositionCost& cost) {
  if (cfg.restarts < 1) throw InvalidArgument("restarts must be >= 1");
  DecompositionResult out;
  const double scale = z.max_abs();
  if (scale == 0.0) {
    out.feasible = true;
    out.value = 0.0;
    out.residual = 0.0;
    out.restart = 0;
    return out;
  }
  std::vector<double> coeffs(z.coeffs);
  for (double& x : coeffs) x /= scale;

  if (z.space.order() == 1) {
    Decomposition d;
    d.terms.push_back({1.0, {coeffs}});
    out.feasible = true;
    out.value = cost(d) * scale;
    out.residual = 0.0;
    out.restart = 0;
    d.terms[0].lambda = scale;
    out.decomposition = std::move(d);
    return out;
  }

  const Layout layout(z, cfg.max_rank, coeffs);
  const auto restarts = static_cast<std::size_t>(cfg.restarts);
  std::vector<Layout::Candidate> results(restarts);
  kernels::for_each_index(restarts, cfg.exec, [&](std::size_t r) {
    Params X = (r == 0 && layout.rank() >= layout.rows())
                   ? layout.coordinate_start(cfg.seed, r)
                   : layout.deflation_start(coeffs, cfg.seed, r, cfg.als_iters);
    auto cand = layout.evaluate(X, cost, cfg.residual_tol);
    results[r] = refine(layout, std::move(X), std::move(cand), cost, cfg, r);
  });

  std::size_t best = restarts;
  std::size_t closest = 0;
  for (std::size_t r = 0; r < restarts; ++r) {
    if (results[r].residual < results[closest].residual) closest = r;
    if (!results[r].feasible) continue;
    if (best == restarts || results[r].cost < results[best].cost) best = r;
  }
  const std::size_t pick = best == restarts ? closest : best;
  out.feasible = best != restarts;
  out.value = out.feasible ? results[pick].cost * scale : kInf;
  out.residual = results[pick].residual;
  out.restart = static_cast<int>(pick);
  out.decomposition = std::move(results[pick].d);
  for (auto& t : out.decomposition.terms) t.lambda = scale;
  return out;
}

}  // namespace tnl

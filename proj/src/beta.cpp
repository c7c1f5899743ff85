#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "tnl/kernels.hpp"
#include "tnl/sigma.hpp"

namespace tnl {

namespace {

using Tuple = std::vector<std::vector<double>>;
using Families = std::vector<Tuple>;  // [factor][member]

double l2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

// Grid members x_J = (families[0][j_0], ..., families[n-1][j_{n-1}]),
// row-major over J.
std::vector<Tuple> grid_members(const Families& fams) {
  const std::size_t n = fams.size();
  std::size_t count = 1;
  for (const auto& f : fams) count *= f.size();
  std::vector<Tuple> out;
  out.reserve(count);
  std::vector<std::size_t> idx(n, 0);
  for (std::size_t J = 0; J < count; ++J) {
    Tuple xs;
    for (std::size_t l = 0; l < n; ++l) xs.push_back(fams[l][idx[l]]);
    out.push_back(std::move(xs));
    for (std::size_t l = n; l-- > 0;) {
      if (++idx[l] < fams[l].size()) break;
      idx[l] = 0;
    }
  }
  return out;
}

double r_sum(const std::vector<double>& v, double r) {
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x), r);
  return std::pow(s, 1.0 / r);
}

}  // namespace

double form_ball_modulus(const TensorSpace& space, const Families& families,
                         double r, const FormBallConfig& cfg) {
  const std::size_t n = space.order();
  if (families.size() != n)
    throw DimensionMismatch("one family per factor is required");
  const auto members = grid_members(families);
  if (members.empty()) throw InvalidArgument("empty family");
  Decomposition grid;
  for (const auto& xs : members) grid.terms.push_back({1.0, xs});
  // Forms on a single space are functionals; product forms cover the ball.
  const auto prod = family_modulus_p(space, grid, r, cfg.modulus);
  if (n == 1 || std::isinf(r) || cfg.ascent_iters <= 0) return prod.value;

  const auto dims = space.dims();
  const TensorSpace dual = space.dual();
  std::vector<double> witness(members.size(), 1.0);
  for (std::size_t J = 0; J < members.size(); ++J)
    for (std::size_t l = 0; l < n; ++l)
      witness[J] *= space.factor(l).norm(members[J][l]);

  std::vector<double> phi = kernels::outer(prod.functionals);
  double fnorm = 1.0;
  for (std::size_t l = 0; l < n; ++l)
    fnorm *= dual.factor(l).norm(prod.functionals[l]);
  if (fnorm == 0.0) return prod.value;
  for (double& x : phi) x /= fnorm;
  double best = prod.value;
  Tuple fs = prod.functionals;

  auto values = [&](const std::vector<double>& f) {
    std::vector<double> v(members.size());
    for (std::size_t J = 0; J < members.size(); ++J)
      v[J] = kernels::contract(f, dims, members[J])[0];
    return v;
  };

  double eta = 0.5;
  for (int it = 0; it < cfg.ascent_iters; ++it) {
    const auto v = values(phi);
    std::vector<double> grad(phi.size(), 0.0);
    for (std::size_t J = 0; J < members.size(); ++J) {
      const double w = (r == 1.0 ? 1.0 : std::pow(std::abs(v[J]), r - 1.0)) *
                       (v[J] < 0.0 ? -1.0 : 1.0);
      kernels::add_outer(grad, members[J], w);
    }
    const double ng = l2(grad);
    if (ng == 0.0) break;
    std::vector<double> cand(phi);
    const double step = eta * l2(phi) / ng;
    for (std::size_t i = 0; i < cand.size(); ++i) cand[i] += step * grad[i];
    // Sup norm estimate, never below what the members themselves witness.
    const auto s = epsilon_search(Tensor(dual, cand), cfg.sup, {fs});
    const auto cv = values(cand);
    double sup = s.value;
    for (std::size_t J = 0; J < members.size(); ++J)
      if (witness[J] > 0.0) sup = std::max(sup, std::abs(cv[J]) / witness[J]);
    const double val = sup > 0.0 ? r_sum(cv, r) / sup : 0.0;
    if (val > best) {
      best = val;
      for (double& x : cand) x /= sup;
      phi = std::move(cand);
      fs = s.functionals;
      eta *= 1.5;
    } else {
      eta *= 0.5;
    }
  }
  return best;
}

double beta_cost(const TensorSpace& space, const GroupedDecomposition& g,
                 const BetaConfig& cfg) {
  const std::size_t n = space.order() - 1;
  const NormedSpace& F = space.factor(n);
  const std::size_t fdim = F.dim();
  std::vector<NormedSpace> xf(space.factors().begin(), space.factors().end() - 1);
  const TensorSpace xspace(std::move(xf), std::max(space.total(), kDefaultMaxTotalDim));
  const double q = conjugate(cfg.p);
  double total = 0.0;
  for (const auto& block : g.blocks) {
    std::vector<double> bn;
    for (std::size_t o = 0; o + fdim <= block.coeffs.size(); o += fdim)
      bn.push_back(F.norm(std::span<const double>(block.coeffs).subspan(o, fdim)));
    double bq = 0.0;
    if (std::isinf(q)) {
      for (double x : bn) bq = std::max(bq, x);
    } else {
      bq = r_sum(bn, q);
    }
    if (bq == 0.0) continue;
    total += bq * form_ball_modulus(xspace, block.families, cfg.p, cfg.ball);
  }
  return total;
}

namespace {

struct BetaCandidate {
  bool feasible = false;
  double cost = kInf;
  double residual = kInf;
  GroupedDecomposition g;
};

class BetaLayout {
 public:
  BetaLayout(const TensorSpace& space, std::vector<double> coeffs,
             const BetaConfig& cfg)
      : space_(space), cfg_(cfg), dims_(space.dims()) {
    n_ = dims_.size() - 1;
    fdim_ = dims_[n_];
    rows_ = space.total() / fdim_;
    Z_ = Eigen::MatrixXd(static_cast<Eigen::Index>(rows_),
                         static_cast<Eigen::Index>(fdim_));
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t k = 0; k < fdim_; ++k)
        Z_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) =
            coeffs[r * fdim_ + k];
  }

  std::size_t order() const { return n_; }
  std::size_t dim(std::size_t l) const { return dims_[l]; }

  BetaCandidate evaluate(std::vector<Families> blocks) const {
    std::size_t cols = 0;
    std::vector<std::vector<Tuple>> members;
    for (const auto& b : blocks) {
      members.push_back(grid_members(b));
      cols += members.back().size();
    }
    Eigen::MatrixXd G(static_cast<Eigen::Index>(rows_),
                      static_cast<Eigen::Index>(cols));
    std::size_t c = 0;
    for (const auto& ms : members)
      for (const auto& xs : ms) {
        const auto col = kernels::outer(xs);
        for (std::size_t r = 0; r < rows_; ++r)
          G(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = col[r];
        ++c;
      }
    const Eigen::MatrixXd B = G.completeOrthogonalDecomposition().solve(Z_);
    BetaCandidate out;
    out.residual = (G * B - Z_).norm();
    if (!std::isfinite(out.residual)) out.residual = kInf;
    c = 0;
    for (std::size_t m = 0; m < blocks.size(); ++m) {
      GroupedDecomposition::Block blk;
      blk.families = std::move(blocks[m]);
      for (std::size_t J = 0; J < members[m].size(); ++J, ++c)
        for (std::size_t k = 0; k < fdim_; ++k)
          blk.coeffs.push_back(
              B(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(k)));
      out.g.blocks.push_back(std::move(blk));
    }
    if (out.residual < cfg_.residual_tol) {
      out.cost = beta_cost(space_, out.g, cfg_);
      out.feasible = std::isfinite(out.cost);
    }
    return out;
  }

  std::vector<Families> coordinate_start() const {
    Families f(n_);
    for (std::size_t l = 0; l < n_; ++l)
      for (std::size_t i = 0; i < dims_[l]; ++i) {
        std::vector<double> e(dims_[l], 0.0);
        e[i] = 1.0;
        f[l].push_back(std::move(e));
      }
    return {f};
  }

  // Single-member blocks from successive rank-1 deflation, one block per
  // term up to the block budget.
  std::vector<Families> deflation_start(std::span<const double> coeffs) const {
    const std::size_t blocks = std::max<std::size_t>(cfg_.max_blocks, 1);
    std::vector<double> W(coeffs.begin(), coeffs.end());
    std::vector<Families> out;
    for (std::size_t m = 0; m < blocks && l2(W) > 1e-13; ++m) {
      kernels::Factors x(dims_.size());
      for (std::size_t l = 0; l < dims_.size(); ++l) {
        x[l].assign(dims_[l], 0.0);
        x[l][0] = 1.0;
      }
      // Start from the largest coefficient so the first sweep is nonzero.
      std::size_t arg = 0;
      for (std::size_t f = 1; f < W.size(); ++f)
        if (std::abs(W[f]) > std::abs(W[arg])) arg = f;
      for (std::size_t l = dims_.size(); l-- > 0;) {
        x[l].assign(dims_[l], 0.0);
        x[l][arg % dims_[l]] = 1.0;
        arg /= dims_[l];
      }
      double sigma = 0.0;
      for (int it = 0; it < 300; ++it) {
        for (std::size_t l = 0; l < dims_.size(); ++l) {
          if (dims_[l] == 1) continue;
          auto v = kernels::contract(W, dims_, x, l);
          const double nv = l2(v);
          if (nv == 0.0) continue;
          for (double& a : v) a /= nv;
          x[l] = std::move(v);
        }
        const double s = kernels::contract(W, dims_, x)[0];
        const bool done = std::abs(s - sigma) <= 1e-15 * std::abs(s);
        sigma = s;
        if (done) break;
      }
      kernels::add_outer(W, x, -sigma);
      Families f(n_);
      for (std::size_t l = 0; l < n_; ++l) f[l].push_back(x[l]);
      out.push_back(std::move(f));
    }
    return out;
  }

  std::vector<Families> random_start(std::size_t restart) const {
    const std::size_t blocks = 1 + (restart - 1) % std::max<std::size_t>(cfg_.max_blocks, 1);
    std::vector<Families> out(blocks, Families(n_));
    std::normal_distribution<double> g(0.0, 1.0);
    for (std::size_t m = 0; m < blocks; ++m)
      for (std::size_t l = 0; l < n_; ++l) {
        const std::size_t size =
            dims_[l] == 1 ? 1 : std::min(dims_[l], std::max<std::size_t>(cfg_.max_family, 1));
        for (std::size_t j = 0; j < size; ++j) {
          if (dims_[l] == 1) {
            out[m][l].push_back({1.0});
            continue;
          }
          Rng rng(stream_seed(cfg_.seed, restart, m * 64 + j, l));
          std::vector<double> v(dims_[l]);
          for (double& x : v) x = g(rng);
          const double nv = l2(v);
          for (double& x : v) x /= nv;
          out[m][l].push_back(std::move(v));
        }
      }
    return out;
  }

 private:
  const TensorSpace& space_;
  const BetaConfig& cfg_;
  std::vector<std::size_t> dims_;
  std::size_t n_ = 0;
  std::size_t fdim_ = 1;
  std::size_t rows_ = 1;
  Eigen::MatrixXd Z_;
};

BetaCandidate refine(const BetaLayout& layout, BetaCandidate cur,
                     const BetaConfig& cfg, std::size_t restart) {
  if (!cur.feasible) return cur;
  Rng rng(stream_seed(cfg.seed, restart, 0xbe7a));
  std::normal_distribution<double> g(0.0, 1.0);
  double step = 0.2;
  for (int it = 0; it < cfg.refine_iters && step > 1e-6; ++it) {
    std::vector<Families> base;
    for (const auto& b : cur.g.blocks) base.push_back(b.families);
    std::vector<Families> delta = base;
    for (auto& b : delta)
      for (std::size_t l = 0; l < b.size(); ++l)
        for (auto& v : b[l])
          for (double& x : v) x = layout.dim(l) == 1 ? 0.0 : g(rng);
    bool accepted = false;
    for (double sgn : {1.0, -1.0}) {
      std::vector<Families> cand = base;
      for (std::size_t m = 0; m < cand.size(); ++m)
        for (std::size_t l = 0; l < cand[m].size(); ++l) {
          if (layout.dim(l) == 1) continue;
          for (std::size_t j = 0; j < cand[m][l].size(); ++j) {
            auto& v = cand[m][l][j];
            for (std::size_t i = 0; i < v.size(); ++i)
              v[i] += sgn * step * delta[m][l][j][i];
            const double nv = l2(v);
            if (nv > 0.0)
              for (double& x : v) x /= nv;
          }
        }
      auto c = layout.evaluate(std::move(cand));
      if (c.feasible && c.cost < cur.cost) {
        cur = std::move(c);
        accepted = true;
        break;
      }
    }
    step = accepted ? std::min(1.0, step * 1.5) : step * 0.5;
  }
  return cur;
}

}  // namespace

BetaResult beta_p_upper(const Tensor& z, const BetaConfig& cfg) {
  ConjugatePair::of(cfg.p);
  if (z.space.order() < 2)
    throw InvalidArgument("beta_p needs at least one factor besides F");
  if (cfg.restarts < 1) throw InvalidArgument("restarts must be >= 1");
  BetaResult out;
  const double scale = z.max_abs();
  if (scale == 0.0) {
    out.feasible = true;
    out.value = 0.0;
    out.residual = 0.0;
    return out;
  }
  std::vector<double> coeffs(z.coeffs);
  for (double& x : coeffs) x /= scale;
  const BetaLayout layout(z.space, coeffs, cfg);
  const auto restarts = static_cast<std::size_t>(cfg.restarts);
  std::vector<BetaCandidate> results(restarts);
  kernels::for_each_index(restarts, cfg.exec, [&](std::size_t r) {
    auto start = r == 0   ? layout.coordinate_start()
                 : r == 1 ? layout.deflation_start(coeffs)
                          : layout.random_start(r - 1);
    results[r] = refine(layout, layout.evaluate(std::move(start)), cfg, r);
  });
  std::size_t best = restarts;
  std::size_t closest = 0;
  for (std::size_t r = 0; r < restarts; ++r) {
    if (results[r].residual < results[closest].residual) closest = r;
    if (results[r].feasible && (best == restarts || results[r].cost < results[best].cost))
      best = r;
  }
  const std::size_t pick = best == restarts ? closest : best;
  out.feasible = best != restarts;
  out.value = out.feasible ? results[pick].cost * scale : kInf;
  out.residual = results[pick].residual;
  out.decomposition = std::move(results[pick].g);
  for (auto& b : out.decomposition.blocks)
    for (double& x : b.coeffs) x *= scale;
  return out;
}

}  // namespace tnl

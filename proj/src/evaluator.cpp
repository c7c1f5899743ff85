#include "tnl/evaluator.hpp"

#include <algorithm>

namespace tnl {

EpsilonConfig epsilon_config(const EvaluatorParams& p) {
  EpsilonConfig c;
  c.seed = p.seed;
  if (p.restarts > 0) c.restarts = p.restarts;
  c.grid_resolution = p.grid_resolution;
  c.exec = p.exec;
  return c;
}

namespace {

PiConfig pi_config(const EvaluatorParams& p) {
  PiConfig c;
  c.search.seed = p.seed;
  c.search.max_rank = p.max_rank;
  if (p.restarts > 0) c.search.restarts = p.restarts;
  c.search.exec = p.exec;
  c.sup = epsilon_config(p);
  c.sup.exec = Exec::serial;
  return c;
}

}  // namespace

InjectiveNorm::InjectiveNorm(const EvaluatorParams& params)
    : cfg_(epsilon_config(params)), dual_(pi_config(params)) {}

NormEstimate InjectiveNorm::estimate(const Tensor& z) const {
  return epsilon_estimate(z, cfg_);
}

// The dual of the injective norm is the projective norm over the dual
// factors.
NormEstimate InjectiveNorm::dual_estimate(const Tensor& form) const {
  return pi_estimate(Tensor(form.space.dual(), form.coeffs), dual_);
}

ProjectiveNorm::ProjectiveNorm(const EvaluatorParams& params)
    : cfg_(pi_config(params)) {}

NormEstimate ProjectiveNorm::estimate(const Tensor& z) const {
  return pi_estimate(z, cfg_);
}

// The dual of the projective norm is the multilinear sup norm.
NormEstimate ProjectiveNorm::dual_estimate(const Tensor& form) const {
  EpsilonConfig c = cfg_.sup;
  c.exec = cfg_.search.exec;
  return epsilon_estimate(Tensor(form.space.dual(), form.coeffs), c);
}

SigmaNorm::SigmaNorm(const EvaluatorParams& params) {
  ConjugatePair::of(params.p);
  cfg_.p = params.p;
  cfg_.search.seed = params.seed;
  cfg_.search.max_rank = params.max_rank;
  if (params.restarts > 0) cfg_.search.restarts = params.restarts;
  cfg_.search.exec = params.exec;
  cfg_.modulus.seed = params.seed;
  cfg_.eps = epsilon_config(params);
  cfg_.eps.exec = Exec::serial;
  dual_.p = params.p;
  dual_.seed = params.seed;
  dual_.modulus.seed = params.seed;
  dual_.sup = cfg_.eps;
  dual_.exec = params.exec;
}

NormEstimate SigmaNorm::estimate(const Tensor& z) const {
  return sigma_p_estimate(z, cfg_);
}

NormEstimate SigmaNorm::dual_estimate(const Tensor& form) const {
  return sigma_p_dual(form, dual_).estimate;
}

BetaNorm::BetaNorm(const EvaluatorParams& params) : eps_(epsilon_config(params)) {
  ConjugatePair::of(params.p);
  cfg_.p = params.p;
  cfg_.seed = params.seed;
  if (params.restarts > 0) cfg_.restarts = params.restarts;
  cfg_.exec = params.exec;
  cfg_.ball.modulus.seed = params.seed;
  cfg_.ball.sup.seed = params.seed;
  eps_.exec = Exec::serial;
}

// beta_p is a tensor norm, so the injective norm bounds it from below.
NormEstimate BetaNorm::estimate(const Tensor& z) const {
  if (z.is_zero()) return NormEstimate::exact(0.0, cfg_.seed);
  const auto up = beta_p_upper(z, cfg_);
  NormEstimate e;
  e.upper = up.value;
  e.lower = std::min(epsilon_search(z, eps_).value, e.upper);
  e.converged = up.feasible;
  e.seed = cfg_.seed;
  return e;
}

NormEstimate BetaNorm::dual_estimate(const Tensor&) const {
  throw Unsupported("no dual estimator for beta_p");
}

std::unique_ptr<TensorNormEvaluator> make_evaluator(const std::string& name,
                                                    const EvaluatorParams& params) {
  if (name == "eps") return std::make_unique<InjectiveNorm>(params);
  if (name == "pi") return std::make_unique<ProjectiveNorm>(params);
  if (name == "sigma_p") return std::make_unique<SigmaNorm>(params);
  if (name == "beta_p") return std::make_unique<BetaNorm>(params);
  throw InvalidArgument("unknown tensor norm '" + name + "'");
}

}  // namespace tnl

#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "tnl/common.hpp"
#include "tnl/injective.hpp"
#include "tnl/projective.hpp"
#include "tnl/sigma.hpp"
#include "tnl/tensor.hpp"

namespace tnl {

/// Uniform contract under which the tensor norms are interchangeable.
class TensorNormEvaluator {
 public:
  virtual ~TensorNormEvaluator() = default;

  virtual std::string name() const = 0;
  virtual NormEstimate estimate(const Tensor& z) const = 0;

  /// Norm of the form with coefficients `form` (over the same factors as the
  /// tensors this norm measures) in the dual of this tensor norm. Throws
  /// Unsupported when no dual estimator exists.
  virtual NormEstimate dual_estimate(const Tensor& form) const = 0;

  /// Exponent for the p-parametrized norms, 0 otherwise.
  virtual double p() const { return 0.0; }
  virtual std::uint64_t seed() const = 0;
};

struct EvaluatorParams {
  double p = 2.0;
  std::uint64_t seed = 0;
  /// 0 keeps each estimator's default.
  int restarts = 0;
  std::size_t max_rank = 0;
  int grid_resolution = 0;
  Exec exec = Exec::serial;
};

/// Injective settings derived from the shared parameters; also used for
/// multilinear sup norms so both sides of an identity share one budget.
EpsilonConfig epsilon_config(const EvaluatorParams& params);

class InjectiveNorm : public TensorNormEvaluator {
 public:
  explicit InjectiveNorm(const EvaluatorParams& params = {});
  std::string name() const override { return "eps"; }
  NormEstimate estimate(const Tensor& z) const override;
  NormEstimate dual_estimate(const Tensor& form) const override;
  std::uint64_t seed() const override { return cfg_.seed; }
  const EpsilonConfig& config() const { return cfg_; }

 private:
  EpsilonConfig cfg_;
  PiConfig dual_;
};

class ProjectiveNorm : public TensorNormEvaluator {
 public:
  explicit ProjectiveNorm(const EvaluatorParams& params = {});
  std::string name() const override { return "pi"; }
  NormEstimate estimate(const Tensor& z) const override;
  NormEstimate dual_estimate(const Tensor& form) const override;
  std::uint64_t seed() const override { return cfg_.search.seed; }
  const PiConfig& config() const { return cfg_; }

 private:
  PiConfig cfg_;
};

class SigmaNorm : public TensorNormEvaluator {
 public:
  explicit SigmaNorm(const EvaluatorParams& params = {});
  std::string name() const override { return "sigma_p"; }
  NormEstimate estimate(const Tensor& z) const override;
  NormEstimate dual_estimate(const Tensor& form) const override;
  double p() const override { return cfg_.p; }
  std::uint64_t seed() const override { return cfg_.search.seed; }
  const SigmaConfig& config() const { return cfg_; }
  const SigmaDualConfig& dual_config() const { return dual_; }

 private:
  SigmaConfig cfg_;
  SigmaDualConfig dual_;
};

class BetaNorm : public TensorNormEvaluator {
 public:
  explicit BetaNorm(const EvaluatorParams& params = {});
  std::string name() const override { return "beta_p"; }
  NormEstimate estimate(const Tensor& z) const override;
  NormEstimate dual_estimate(const Tensor& form) const override;
  double p() const override { return cfg_.p; }
  std::uint64_t seed() const override { return cfg_.seed; }

 private:
  BetaConfig cfg_;
  EpsilonConfig eps_;
};

/// name in {eps, pi, sigma_p, beta_p}; throws InvalidArgument otherwise.
std::unique_ptr<TensorNormEvaluator> make_evaluator(const std::string& name,
                                                    const EvaluatorParams& params = {});

}  // namespace tnl

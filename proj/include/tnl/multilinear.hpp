#pragma once

#include <cstdint>
#include <vector>

#include "tnl/common.hpp"
#include "tnl/evaluator.hpp"
#include "tnl/injective.hpp"
#include "tnl/sigma.hpp"
#include "tnl/tensor.hpp"

namespace tnl {

/// n-linear map E_1 x ... x E_n -> F with coefficients indexed by
/// (i_1, ..., i_n, out), row-major.
struct MultilinearMap {
  std::vector<NormedSpace> domain;
  NormedSpace codomain;
  std::vector<double> coeffs;

  MultilinearMap(std::vector<NormedSpace> domain, NormedSpace codomain,
                 std::vector<double> coeffs);

  std::size_t order() const { return domain.size(); }
  bool scalar() const { return codomain.dim() == 1; }

  /// A(x_1, ..., x_n) in codomain coordinates.
  std::vector<double> apply(const std::vector<std::vector<double>>& xs) const;

  /// Coefficients as a form on E_1 (x) ... (x) E_n; scalar maps only.
  Tensor as_form() const;
  static MultilinearMap from_form(const Tensor& form);

  /// (lambda_1, ..., lambda_n) -> lambda_1 ... lambda_n on K^n.
  static MultilinearMap multiplication(std::size_t n);
};

struct SupNorm {
  NormEstimate estimate;
  /// Unit-ball points where the best value was found, one per factor.
  std::vector<std::vector<double>> argmax;
};

/// sup ||A(x_1, ..., x_n)|| over the unit balls, as the injective norm of the
/// coefficients over (E_1', ..., E_n', F); certified when every ball is
/// polyhedral.
SupNorm sup_norm(const MultilinearMap& a, const EpsilonConfig& cfg = {});

/// ||u|| for a linear operator.
NormEstimate operator_norm(const LinearMap& u, const EpsilonConfig& cfg = {});

/// Norm of the linearization of a scalar map on (E_1 (x) ... (x) E_n, beta).
NormEstimate linearization_norm(const MultilinearMap& a,
                                const TensorNormEvaluator& beta);

/// A on (E_1, ..., E_n, K; F) -> A1 = A(., ..., ., 1) on (E_1, ..., E_n; F).
MultilinearMap one_adjunction(const MultilinearMap& a);
/// Re-attaches the scalar slot.
MultilinearMap one_adjunction_inverse(const MultilinearMap& a1);

/// T into G, read as G = F' for F = dual(G), to the (n+1)-form
/// (x_1, ..., x_n, y) -> T(x_1, ..., x_n)(y) on (E_1, ..., E_n, F).
MultilinearMap to_scalar_form(const MultilinearMap& t);
/// Inverse of to_scalar_form; the codomain becomes the dual of the last
/// domain factor.
MultilinearMap from_scalar_form(const MultilinearMap& form);

/// t o A o (u_1, ..., u_n).
MultilinearMap compose(const LinearMap& t, const MultilinearMap& a,
                       const std::vector<LinearMap>& us);

MultilinearMap random_map(const std::vector<NormedSpace>& domain,
                          const NormedSpace& codomain, std::uint64_t seed);

struct PropertyBReport {
  /// Linearization norms of A on (E..., K) and of A1 on (E...), per sample.
  std::vector<double> full;
  std::vector<double> reduced;
  std::vector<double> deviation;
  double max_deviation = 0.0;
};

/// Samples scalar A on (E_1, ..., E_n, K) and compares its linearization
/// norm under beta with that of A1.
PropertyBReport property_B_check(const TensorNormEvaluator& beta,
                                 const std::vector<NormedSpace>& spaces,
                                 std::size_t samples, std::uint64_t seed,
                                 Exec exec = Exec::serial);

struct SummingConfig {
  double p = 2.0;
  double q = 2.0;
  /// Largest family size per factor.
  std::size_t family_budget = 3;
  int restarts = 3;
  int refine_iters = 30;
  FormBallConfig ball;
  EpsilonConfig sup;
  std::uint64_t seed = 0;
  Exec exec = Exec::serial;
};

struct SummingResult {
  NormEstimate estimate;
  /// Best families, [factor][member].
  std::vector<std::vector<std::vector<double>>> families;
};

/// Lower bound on the strongly multiple (p, q)-summing norm: the best ratio
/// (sum_J ||A(x_J)||^p)^(1/p) / (sup over the form ball of
/// sum_J |f(x_J)|^q)^(1/q) found over families within the budget, J running
/// over the full product grid.
SummingResult sm_pq_norm(const MultilinearMap& a, const SummingConfig& cfg = {});

/// The ratio above for given families.
double summing_ratio(const MultilinearMap& a,
                     const std::vector<std::vector<std::vector<double>>>& families,
                     double p, double q, const FormBallConfig& cfg);

}  // namespace tnl

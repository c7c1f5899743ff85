#pragma once

#include <cstdint>

#include "tnl/common.hpp"
#include "tnl/injective.hpp"
#include "tnl/search.hpp"
#include "tnl/tensor.hpp"

namespace tnl {

struct PiConfig {
  SearchConfig search;
  /// Settings for sup norms of the candidate forms in the lower bound.
  EpsilonConfig sup;
  int ascent_iters = 8;
  /// Relative bracket gap below which the estimate is reported converged.
  double tol = 1e-6;
};

/// sum_j |lambda_j| prod_l ||x_lj||.
double pi_cost(const TensorSpace& space, const Decomposition& d);

/// Upper bound by decomposition search; infeasible results carry +inf.
DecompositionResult pi_upper(const Tensor& z, const SearchConfig& cfg);

/// Lower bound max <A, z> / ||A|| over candidate forms A: the form dual to a
/// given decomposition (when `hint` is supplied), the product of injective
/// maximizers, and a few ascent steps from the better of the two. ||A|| is
/// the multilinear sup norm, evaluated by the injective machinery on the dual
/// factors. The result never exceeds `cap`.
double pi_lower(const Tensor& z, const PiConfig& cfg,
                const Decomposition* hint = nullptr, double cap = kInf);

NormEstimate pi_estimate(const Tensor& z, const PiConfig& cfg = {});

/// Sum of singular values of the coefficient matrix (two unweighted l2
/// factors only).
double pi_matrix_oracle(const Tensor& z);

}  // namespace tnl

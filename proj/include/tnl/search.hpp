#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "tnl/common.hpp"
#include "tnl/tensor.hpp"

namespace tnl {

/// Budget for the rank-bounded decomposition search shared by the projective
/// and sigma_p upper bounds.
struct SearchConfig {
  /// Number of terms; 0 selects the product of all factor dimensions except
  /// the largest, which always admits an exact decomposition.
  std::size_t max_rank = 0;
  int restarts = 4;
  int refine_iters = 40;
  int als_iters = 300;
  double residual_tol = 1e-9;
  std::uint64_t seed = 0;
  Exec exec = Exec::serial;
};

struct DecompositionResult {
  bool feasible = false;
  double value = kInf;
  /// l2 reconstruction residual on the max-abs normalized tensor.
  double residual = kInf;
  Decomposition decomposition;
  int restart = -1;
};

/// Objective evaluated on a candidate decomposition whose terms carry
/// lambda = 1. Must be positively homogeneous of degree one in the tensor.
using DecompositionCost = std::function<double(const Decomposition&)>;

/// Minimizes `cost` over exact decompositions of z with at most max_rank
/// terms.
///
/// The largest factor is the free factor: the other factors' vectors are the
/// search parameters, and the free-factor vectors are obtained by solving the
/// linear reconstruction system, so every candidate reconstructs z up to the
/// solver's rounding. Restart 0 starts from the coordinate decomposition,
/// later restarts from successive rank-1 deflation; each is refined by
/// random-direction descent on the cost. One-dimensional factors are pinned
/// to +1 and never searched.
DecompositionResult free_factor_search(const Tensor& z, const SearchConfig& cfg,
                                       const DecompositionCost& cost);

/// Default free factor: first factor of maximal dimension.
std::size_t free_factor(const TensorSpace& space);

/// Default rank: product of all factor dimensions except the free factor.
std::size_t default_rank(const TensorSpace& space);

}  // namespace tnl

#pragma once

#include <cstddef>
#include <exception>
#include <span>
#include <vector>

#include "tnl/common.hpp"

namespace tnl::kernels {

using Dims = std::span<const std::size_t>;
using Factors = std::vector<std::vector<double>>;

inline constexpr std::size_t kAll = static_cast<std::size_t>(-1);

/// Contracts every mode except `skip` against the matching vector in `fs`;
/// returns a vector of length dims[skip] (length 1 when skip == kAll).
///
/// Modes are contracted from last to first, and each output entry is summed
/// in increasing index order, so the result does not depend on the thread
/// count. A trailing mode of size one contributes a single multiplication.
std::vector<double> contract(std::span<const double> t, Dims dims,
                             const Factors& fs, std::size_t skip = kAll);

/// Straight multi-index loop; kept as the reference for contract().
std::vector<double> contract_reference(std::span<const double> t, Dims dims,
                                       const Factors& fs,
                                       std::size_t skip = kAll);

/// Mode-k product: out[.., r, ..] = sum_i m[r, i] t[.., i, ..], with m given
/// row-major as rows x dims[k].
std::vector<double> mode_product(std::span<const double> t, Dims dims,
                                 std::size_t k, std::span<const double> m,
                                 std::size_t rows);

std::vector<double> mode_product_reference(std::span<const double> t,
                                           Dims dims, std::size_t k,
                                           std::span<const double> m,
                                           std::size_t rows);

/// Row-major outer product of the given vectors, scaled by lambda.
std::vector<double> outer(const Factors& vs, double lambda = 1.0);

/// Adds lambda * (outer product) into acc.
void add_outer(std::span<double> acc, const Factors& vs, double lambda);

/// Runs fn(i) for i in [0, count). Under Exec::parallel the iterations are
/// spread over OpenMP threads; the first exception (by index) is rethrown.
template <class Fn>
void for_each_index(std::size_t count, Exec exec, Fn&& fn) {
  if (exec == Exec::serial || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// Number of OpenMP threads available to parallel regions.
int max_threads();

}  // namespace tnl::kernels

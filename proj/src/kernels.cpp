#include "tnl/kernels.hpp"

#include <omp.h>

#include <numeric>

namespace tnl::kernels {

namespace {

// Below this many multiply-adds the OpenMP fork costs more than it saves.
constexpr std::size_t kParallelThreshold = 1U << 15;

std::size_t product(Dims dims, std::size_t begin, std::size_t end) {
  std::size_t p = 1;
  for (std::size_t i = begin; i < end; ++i) p *= dims[i];
  return p;
}

}  // namespace

std::vector<double> contract(std::span<const double> t, Dims dims,
                             const Factors& fs, std::size_t skip) {
  const std::size_t n = dims.size();
  std::vector<double> cur(t.begin(), t.end());
  std::vector<double> next;
  for (std::size_t kk = n; kk-- > 0;) {
    if (kk == skip) continue;
    const std::size_t dk = dims[kk];
    const std::size_t a_count = product(dims, 0, kk);
    const std::size_t b_count = (skip != kAll && kk < skip) ? dims[skip] : 1;
    const std::vector<double>& f = fs[kk];
    next.assign(a_count * b_count, 0.0);
    const long na = static_cast<long>(a_count);
    const bool par = a_count * b_count * dk >= kParallelThreshold;
#pragma omp parallel for if (par)
    for (long a = 0; a < na; ++a) {
      const std::size_t base = static_cast<std::size_t>(a) * dk * b_count;
      for (std::size_t b = 0; b < b_count; ++b) {
        double acc = 0.0;
        for (std::size_t i = 0; i < dk; ++i)
          acc += cur[base + i * b_count + b] * f[i];
        next[static_cast<std::size_t>(a) * b_count + b] = acc;
      }
    }
    cur.swap(next);
  }
  return cur;
}

std::vector<double> contract_reference(std::span<const double> t, Dims dims,
                                       const Factors& fs, std::size_t skip) {
  const std::size_t n = dims.size();
  std::vector<double> out(skip == kAll ? 1 : dims[skip], 0.0);
  std::vector<std::size_t> idx(n, 0);
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    double v = t[flat];
    for (std::size_t l = 0; l < n; ++l)
      if (l != skip) v *= fs[l][idx[l]];
    out[skip == kAll ? 0 : idx[skip]] += v;
    for (std::size_t l = n; l-- > 0;) {
      if (++idx[l] < dims[l]) break;
      idx[l] = 0;
    }
  }
  return out;
}

std::vector<double> mode_product(std::span<const double> t, Dims dims,
                                 std::size_t k, std::span<const double> m,
                                 std::size_t rows) {
  const std::size_t dk = dims[k];
  const std::size_t a_count = product(dims, 0, k);
  const std::size_t b_count = product(dims, k + 1, dims.size());
  std::vector<double> out(a_count * rows * b_count, 0.0);
  const long na = static_cast<long>(a_count);
  const bool par = a_count * rows * b_count * dk >= kParallelThreshold;
#pragma omp parallel for if (par)
  for (long a = 0; a < na; ++a) {
    const std::size_t ua = static_cast<std::size_t>(a);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t b = 0; b < b_count; ++b) {
        double acc = 0.0;
        for (std::size_t i = 0; i < dk; ++i)
          acc += m[r * dk + i] * t[(ua * dk + i) * b_count + b];
        out[(ua * rows + r) * b_count + b] = acc;
      }
  }
  return out;
}

std::vector<double> mode_product_reference(std::span<const double> t,
                                           Dims dims, std::size_t k,
                                           std::span<const double> m,
                                           std::size_t rows) {
  const std::size_t n = dims.size();
  std::vector<std::size_t> out_dims(dims.begin(), dims.end());
  out_dims[k] = rows;
  const std::size_t total_out = product(out_dims, 0, n);
  std::vector<double> out(total_out, 0.0);
  std::vector<std::size_t> idx(n, 0);
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    for (std::size_t r = 0; r < rows; ++r) {
      std::size_t o = 0;
      for (std::size_t l = 0; l < n; ++l)
        o = o * out_dims[l] + (l == k ? r : idx[l]);
      out[o] += m[r * dims[k] + idx[k]] * t[flat];
    }
    for (std::size_t l = n; l-- > 0;) {
      if (++idx[l] < dims[l]) break;
      idx[l] = 0;
    }
  }
  return out;
}

std::vector<double> outer(const Factors& vs, double lambda) {
  std::vector<double> out{lambda};
  for (const auto& v : vs) {
    std::vector<double> next(out.size() * v.size());
    for (std::size_t a = 0; a < out.size(); ++a)
      for (std::size_t i = 0; i < v.size(); ++i)
        next[a * v.size() + i] = out[a] * v[i];
    out.swap(next);
  }
  return out;
}

void add_outer(std::span<double> acc, const Factors& vs, double lambda) {
  const std::vector<double> o = outer(vs, lambda);
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += o[i];
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace tnl::kernels

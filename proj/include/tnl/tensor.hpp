#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tnl/spaces.hpp"

namespace tnl {

/// Default cap on the number of dense coefficients.
inline constexpr std::size_t kDefaultMaxTotalDim = 4096;

class TensorSpace {
 public:
  explicit TensorSpace(std::vector<NormedSpace> factors,
                       std::size_t max_total = kDefaultMaxTotalDim);

  std::size_t order() const { return factors_.size(); }
  const NormedSpace& factor(std::size_t l) const { return factors_[l]; }
  const std::vector<NormedSpace>& factors() const { return factors_; }
  std::vector<std::size_t> dims() const;
  std::size_t total() const { return total_; }

  /// Space whose factors are the duals of these factors.
  TensorSpace dual() const;
  /// Appends the one-dimensional scalar factor.
  TensorSpace with_scalar() const;

  friend bool operator==(const TensorSpace&, const TensorSpace&) = default;

 private:
  std::vector<NormedSpace> factors_;
  std::size_t total_ = 1;
};

/// Dense coefficient array over a product of spaces, row-major (last index
/// fastest).
struct Tensor {
  TensorSpace space;
  std::vector<double> coeffs;

  Tensor(TensorSpace s, std::vector<double> c);
  static Tensor zeros(TensorSpace s);

  bool is_zero() const;
  double max_abs() const;
};

/// Finite representation sum_j lambda_j x_{1j} (x) ... (x) x_{nj}.
struct Decomposition {
  struct Term {
    double lambda = 1.0;
    std::vector<std::vector<double>> vectors;  // one per factor
  };
  std::vector<Term> terms;
};

/// Blocked representation used by beta_p:
///   u = sum_m sum_{J} x^{(1)}_{m,j1} (x) ... (x) x^{(n)}_{m,jn} (x) b_{m,J}
/// where the last tensor factor is the codomain-like space F.
struct GroupedDecomposition {
  struct Block {
    /// families[l][j] is x^{(l)}_{m,j}, for the first n factors.
    std::vector<std::vector<std::vector<double>>> families;
    /// b_{m,J} stored row-major over (j1, ..., jn, k) with k indexing F.
    std::vector<double> coeffs;
  };
  std::vector<Block> blocks;
};

/// Linear operator between normed spaces, row-major (to.dim x from.dim).
struct LinearMap {
  NormedSpace from;
  NormedSpace to;
  std::vector<double> matrix;

  static LinearMap identity(const NormedSpace& s);
  std::vector<double> apply(std::span<const double> x) const;
};

Tensor from_decomposition(const TensorSpace& space, const Decomposition& d);
Tensor from_grouped(const TensorSpace& space, const GroupedDecomposition& g);

/// sum over the multi-index of coeffs * f_1(i_1) ... f_n(i_n).
double eval_functionals(const Tensor& z, std::span<const Functional> fs);

/// Decomposition-form evaluation sum_j lambda_j prod_l f_l(x_lj).
double eval_functionals(const Decomposition& d,
                        std::span<const Functional> fs);

/// psi: E_1 (x) ... (x) E_n (x) K -> E_1 (x) ... (x) E_n. The last factor must
/// be one-dimensional with unit scale.
Tensor flatten_scalar(const Tensor& z);
/// Inverse of flatten_scalar; appends NormedSpace::scalars().
Tensor unflatten_scalar(const Tensor& z);

/// (u_1 (x) ... (x) u_n)(z).
Tensor apply_operators(const Tensor& z, std::span<const LinearMap> us);

struct TensorStyle {
  enum Kind { dense, low_rank } kind = dense;
  std::size_t rank = 1;
  static TensorStyle Dense() { return {dense, 0}; }
  static TensorStyle LowRank(std::size_t r) { return {low_rank, r}; }
};

Tensor random_tensor(const TensorSpace& space, std::uint64_t seed,
                     TensorStyle style = TensorStyle::Dense());
/// The r-term decomposition realized by random_tensor(..., LowRank(r)).
Decomposition random_decomposition(const TensorSpace& space,
                                   std::uint64_t seed, std::size_t rank);

/// Elementary tensor x_1 (x) ... (x) x_n.
Tensor elementary(const TensorSpace& space,
                  std::span<const std::vector<double>> vectors);

/// Coefficient-wise <a, b>.
double pairing(const Tensor& a, const Tensor& b);

}  // namespace tnl

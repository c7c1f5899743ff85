#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tnl/common.hpp"
#include "tnl/tensor.hpp"

namespace tnl {

struct EpsilonConfig {
  int restarts = 32;
  int max_iters = 5000;
  /// Convergence: relative improvement below tol for `stall_sweeps` sweeps.
  double tol = 1e-13;
  int stall_sweeps = 3;
  /// Lattice resolution for smooth dual balls in the brute-force bracket;
  /// 0 disables the grid.
  int grid_resolution = 0;
  std::uint64_t seed = 0;
  /// Attach a brute-force certificate to epsilon_estimate when one fits in
  /// brute_budget evaluations.
  bool certify = true;
  std::size_t brute_budget = std::size_t{1} << 18;
  Exec exec = Exec::serial;
};

/// Best functional tuple found by alternating maximization.
struct EpsilonSearch {
  double value = 0.0;
  /// Maximizing functionals, one per factor, in dual coordinates.
  std::vector<std::vector<double>> functionals;
  bool converged = true;
  int iterations = 0;
};

/// Multi-start alternating maximization of |<f_1 (x) ... (x) f_n, z>| over
/// the dual unit balls. Every single-factor step is solved exactly, so each
/// restart is monotone. `warm` supplies extra starting tuples that run after
/// the random restarts.
EpsilonSearch epsilon_search(
    const Tensor& z, const EpsilonConfig& cfg,
    const std::vector<std::vector<std::vector<double>>>& warm = {});

/// Injective norm bracket: lower from epsilon_search, upper +inf unless a
/// brute-force certificate is attached.
NormEstimate epsilon_estimate(const Tensor& z, const EpsilonConfig& cfg = {});

/// Brute force over dual balls. Polyhedral factors enumerate extreme points;
/// one factor is always maximized in closed form; remaining smooth factors
/// are covered by a cube-surface lattice with a Lipschitz slack on the upper
/// bound. Throws Unsupported when a smooth factor needs a grid and
/// grid_resolution is 0, BudgetExceeded when the enumeration is too large.
NormEstimate epsilon_bruteforce(const Tensor& z, const EpsilonConfig& cfg = {});

/// Whether epsilon_bruteforce can run without a grid and within budget.
bool epsilon_exact_available(const TensorSpace& space, std::size_t budget);

/// Largest singular value of the coefficient matrix (two unweighted l2
/// factors only).
double epsilon_matrix_oracle(const Tensor& z);

}  // namespace tnl

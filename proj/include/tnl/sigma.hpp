#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tnl/common.hpp"
#include "tnl/injective.hpp"
#include "tnl/search.hpp"
#include "tnl/tensor.hpp"

namespace tnl {

/// Exponents with 1/p + 1/q = 1; p = 1 pairs with q = +inf.
struct ConjugatePair {
  double p = 2.0;
  double q = 2.0;
  static ConjugatePair of(double p);
};

struct ModulusConfig {
  int restarts = 6;
  int max_iters = 200;
  double tol = 1e-13;
  /// Enumerate extreme-point tuples when every dual ball is polyhedral and
  /// the count fits in brute_budget.
  bool exact = true;
  std::size_t brute_budget = std::size_t{1} << 12;
  std::uint64_t seed = 0;
};

struct ModulusResult {
  double value = 0.0;
  /// Maximizing functionals, one per factor.
  std::vector<std::vector<double>> functionals;
  bool exact = false;
};

/// (sup over dual unit balls of sum_j |lambda_j f_1(x_1j) ... f_n(x_nj)|^p)^(1/p)
/// for the family given as the terms of `family`.
///
/// The smooth case uses alternating linearized ascent (each step maximizes
/// the linearization over one dual ball, which never decreases a convex
/// objective) and is a lower bound. `warm` adds starting tuples.
ModulusResult family_modulus_p(
    const TensorSpace& space, const Decomposition& family, double p,
    const ModulusConfig& cfg = {},
    const std::vector<std::vector<std::vector<double>>>& warm = {});

struct SigmaConfig {
  double p = 2.0;
  SearchConfig search;
  ModulusConfig modulus;
  /// Injective search whose maximizers warm-start every modulus evaluation.
  EpsilonConfig eps;
  /// Rounds of the coefficient-weight update per candidate decomposition.
  int weight_iters = 4;
};

/// Cost of one representation: min over weights t of
/// ||(1/t_j)||_q * modulus_p((t_j x_j)).
double sigma_cost(const TensorSpace& space, const Decomposition& d,
                  const SigmaConfig& cfg,
                  const std::vector<std::vector<std::vector<double>>>& warm = {});

DecompositionResult sigma_p_upper(const Tensor& z, const SigmaConfig& cfg = {});

/// Bracket [injective lower bound, sigma_p_upper]; sigma_p dominates the
/// injective norm.
NormEstimate sigma_p_estimate(const Tensor& z, const SigmaConfig& cfg = {});

struct SigmaDualConfig {
  double p = 2.0;
  ModulusConfig modulus;
  EpsilonConfig sup;
  /// Random starting families and their size.
  int restarts = 4;
  std::size_t family_size = 3;
  int refine_iters = 60;
  std::uint64_t seed = 0;
  Exec exec = Exec::serial;
};

/// Best family found for the semi-integral ratio.
struct SigmaDualResult {
  NormEstimate estimate;
  Decomposition family;
};

/// Lower bound on the norm of the form `a` (coefficients over the factors of
/// a.space) dual to sigma_p: the sup over families of
/// (sum_j |a(x_1j, ..., x_nj)|^p)^(1/p) / modulus_p(family).
SigmaDualResult sigma_p_dual(const Tensor& a, const SigmaDualConfig& cfg = {});

/// The ratio above for one family, with the modulus from `mcfg`.
double semi_integral_ratio(const Tensor& a, const Decomposition& family,
                           double p, const ModulusConfig& mcfg);

/// Settings for sups over the unit ball of multilinear forms.
struct FormBallConfig {
  ModulusConfig modulus;
  EpsilonConfig sup;
  int ascent_iters = 6;
};

struct BetaConfig {
  double p = 2.0;
  std::size_t max_blocks = 3;
  std::size_t max_family = 3;
  int restarts = 4;
  int refine_iters = 20;
  double residual_tol = 1e-9;
  FormBallConfig ball;
  std::uint64_t seed = 0;
  Exec exec = Exec::serial;
};

/// (sup over forms f with sup norm <= 1 of sum_J |f(x_J)|^r)^(1/r), J running
/// over the product grid of the families (families[l][j] in factor l).
/// A lower bound: product forms are evaluated exactly, general forms by a
/// short ascent rescaled by their estimated sup norm.
double form_ball_modulus(const TensorSpace& space,
                         const std::vector<std::vector<std::vector<double>>>& families,
                         double r, const FormBallConfig& cfg = {});

struct BetaResult {
  bool feasible = false;
  double value = kInf;
  double residual = kInf;
  GroupedDecomposition decomposition;
};

/// Upper estimate of beta_p on E_1 (x) ... (x) E_n (x) F, F being the last
/// factor, by search over blocked representations within the budget.
BetaResult beta_p_upper(const Tensor& z, const BetaConfig& cfg = {});

/// Cost of one blocked representation.
double beta_cost(const TensorSpace& space, const GroupedDecomposition& g,
                 const BetaConfig& cfg);

}  // namespace tnl

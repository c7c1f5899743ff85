#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tnl/common.hpp"

namespace tnl {

/// Conjugate exponent: 1/p + 1/q = 1, with 1 <-> +inf.
double conjugate(double p);

/// Finite-dimensional real space with an l_p or weighted l_p norm.
///
/// The weighted norm is ||x|| = ||(s_i x_i)||_p where the scale s_i is either
/// the weight w_i or its reciprocal 1/w_i. Dualizing swaps p with its
/// conjugate and flips which of the two is used, so dual() is an exact
/// involution even in floating point.
class NormedSpace {
 public:
  static NormedSpace ellp(std::size_t dim, double p);
  static NormedSpace weighted(std::size_t dim, double p,
                              std::vector<double> weights);
  /// The scalar field modelled as a one-dimensional space with |.|.
  static NormedSpace scalars() { return ellp(1, 2.0); }

  std::size_t dim() const { return dim_; }
  double p() const { return p_; }
  bool is_weighted() const { return !weights_.empty(); }
  const std::vector<double>& weights() const { return weights_; }
  bool reciprocal_weights() const { return reciprocal_; }
  double scale(std::size_t i) const;
  bool unit_scale() const;

  double norm(std::span<const double> v) const;
  NormedSpace dual() const;

  /// True when the unit ball is a polytope (p in {1, inf}, or dim 1).
  bool polyhedral() const;

  /// Maximizes <c, v> over the unit ball of this space. Returns the maximal
  /// value (the dual norm of c) and a maximizer; ties go to the lowest index.
  struct BallMax {
    double value;
    std::vector<double> argmax;
  };
  BallMax maximize_linear(std::span<const double> c) const;

  /// sup of ||v||_inf over the unit ball.
  double max_sup_coordinate() const;

  std::string describe() const;

  friend bool operator==(const NormedSpace&, const NormedSpace&) = default;

 private:
  NormedSpace(std::size_t dim, double p, std::vector<double> w, bool recip);
  void check(std::span<const double> v) const;

  std::size_t dim_ = 1;
  double p_ = 2.0;
  std::vector<double> weights_;
  bool reciprocal_ = false;
};

/// Element of a space, carried with coordinates only; the space travels
/// alongside at the call site.
struct Vector {
  std::vector<double> coords;
};

/// Element of the dual space acting by the coordinate pairing.
struct Functional {
  std::vector<double> coords;
};

double norm(const NormedSpace& space, const Vector& v);
NormedSpace dual_space(const NormedSpace& space);
double pair(const Functional& f, const Vector& v);
double dot(std::span<const double> a, std::span<const double> b);

/// Deterministic unit-norm samples: Gaussian direction, normalized in the
/// space's norm. `count` must be positive.
std::vector<Vector> sample_unit_sphere(const NormedSpace& space,
                                       std::uint64_t seed, std::size_t count);

/// One Gaussian direction normalized in the given norm.
std::vector<double> random_unit(const NormedSpace& space, Rng& rng);

/// Extreme points of the unit ball for l_1 (2d points) and l_inf (2^d points)
/// norms; one-dimensional balls have {+1, -1} (scaled). Throws Unsupported
/// for smooth balls.
std::vector<Vector> extreme_points(const NormedSpace& space);

/// Number of extreme points without materializing them (0 if smooth).
std::size_t extreme_point_count(const NormedSpace& space);

}  // namespace tnl

#include "tnl/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tnl {

namespace {

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

// ||u||_p for the plain (unweighted) coordinates, scaled to avoid overflow.
double ellp_norm(std::span<const double> u, double p) {
  double mx = 0.0;
  for (double x : u) mx = std::max(mx, std::abs(x));
  if (mx == 0.0 || std::isinf(p)) return mx;
  if (p == 1.0) {
    double s = 0.0;
    for (double x : u) s += std::abs(x);
    return s;
  }
  double s = 0.0;
  if (p == 2.0) {
    for (double x : u) {
      const double r = x / mx;
      s += r * r;
    }
    return mx * std::sqrt(s);
  }
  for (double x : u) s += std::pow(std::abs(x) / mx, p);
  return mx * std::pow(s, 1.0 / p);
}

}  // namespace

double conjugate(double p) {
  if (!(p >= 1.0)) throw InvalidArgument("exponent must be >= 1");
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

NormedSpace::NormedSpace(std::size_t dim, double p, std::vector<double> w,
                         bool recip)
    : dim_(dim), p_(p), weights_(std::move(w)), reciprocal_(recip) {
  if (dim_ == 0) throw InvalidArgument("space dimension must be >= 1");
  if (!(p_ >= 1.0)) throw InvalidArgument("norm exponent must be >= 1");
  if (!weights_.empty()) {
    if (weights_.size() != dim_)
      throw DimensionMismatch("weights length must equal dim");
    for (double x : weights_)
      if (!(x > 0.0) || std::isinf(x))
        throw InvalidArgument("weights must be positive and finite");
  }
}

NormedSpace NormedSpace::ellp(std::size_t dim, double p) {
  return NormedSpace(dim, p, {}, false);
}

NormedSpace NormedSpace::weighted(std::size_t dim, double p,
                                  std::vector<double> weights) {
  return NormedSpace(dim, p, std::move(weights), false);
}

double NormedSpace::scale(std::size_t i) const {
  if (weights_.empty()) return 1.0;
  return reciprocal_ ? 1.0 / weights_[i] : weights_[i];
}

bool NormedSpace::unit_scale() const {
  for (std::size_t i = 0; i < dim_; ++i)
    if (scale(i) != 1.0) return false;
  return true;
}

void NormedSpace::check(std::span<const double> v) const {
  if (v.size() != dim_)
    throw DimensionMismatch("vector length " + std::to_string(v.size()) +
                            " does not match space dimension " +
                            std::to_string(dim_));
}

double NormedSpace::norm(std::span<const double> v) const {
  check(v);
  if (weights_.empty()) return ellp_norm(v, p_);
  std::vector<double> u(dim_);
  for (std::size_t i = 0; i < dim_; ++i) u[i] = scale(i) * v[i];
  return ellp_norm(u, p_);
}

NormedSpace NormedSpace::dual() const {
  return NormedSpace(dim_, conjugate(p_), weights_,
                     weights_.empty() ? false : !reciprocal_);
}

bool NormedSpace::polyhedral() const {
  return dim_ == 1 || p_ == 1.0 || std::isinf(p_);
}

NormedSpace::BallMax NormedSpace::maximize_linear(
    std::span<const double> c) const {
  check(c);
  std::vector<double> u(dim_);
  for (std::size_t i = 0; i < dim_; ++i) u[i] = c[i] / scale(i);
  std::vector<double> y(dim_, 0.0);
  const double q = conjugate(p_);
  double value = 0.0;
  if (dim_ == 1) {
    y[0] = sign_of(u[0]);
    value = std::abs(u[0]);
  } else if (p_ == 1.0) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < dim_; ++i)
      if (std::abs(u[i]) > std::abs(u[k])) k = i;
    y[k] = sign_of(u[k]);
    value = std::abs(u[k]);
  } else if (std::isinf(p_)) {
    for (std::size_t i = 0; i < dim_; ++i) {
      y[i] = sign_of(u[i]);
      value += std::abs(u[i]);
    }
  } else {
    double mx = 0.0;
    for (double x : u) mx = std::max(mx, std::abs(x));
    if (mx == 0.0) {
      y[0] = 1.0;
    } else {
      for (std::size_t i = 0; i < dim_; ++i) {
        const double w = std::abs(u[i]) / mx;
        y[i] = sign_of(u[i]) * (p_ == 2.0 ? w : std::pow(w, q - 1.0));
      }
      const double ny = ellp_norm(y, p_);
      for (double& x : y) x /= ny;
      value = ellp_norm(u, q);
    }
  }
  for (std::size_t i = 0; i < dim_; ++i) y[i] /= scale(i);
  return {value, std::move(y)};
}

double NormedSpace::max_sup_coordinate() const {
  double m = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) m = std::max(m, 1.0 / scale(i));
  return m;
}

std::string NormedSpace::describe() const {
  std::ostringstream os;
  os << (weights_.empty() ? "l" : "wl");
  if (std::isinf(p_))
    os << "inf";
  else
    os << p_;
  os << "^" << dim_;
  return os.str();
}

double norm(const NormedSpace& space, const Vector& v) {
  return space.norm(v.coords);
}

NormedSpace dual_space(const NormedSpace& space) { return space.dual(); }

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionMismatch("pairing length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double pair(const Functional& f, const Vector& v) {
  return dot(f.coords, v.coords);
}

std::vector<double> random_unit(const NormedSpace& space, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(space.dim());
  double n = 0.0;
  while (n == 0.0) {
    for (double& x : v) x = g(rng);
    n = space.norm(v);
  }
  for (double& x : v) x /= n;
  return v;
}

std::vector<Vector> sample_unit_sphere(const NormedSpace& space,
                                       std::uint64_t seed, std::size_t count) {
  if (count == 0) throw InvalidArgument("sample count must be >= 1");
  Rng rng(mix_seed(seed));
  std::vector<Vector> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k)
    out.push_back(Vector{random_unit(space, rng)});
  return out;
}

std::size_t extreme_point_count(const NormedSpace& space) {
  const std::size_t d = space.dim();
  if (d == 1) return 2;
  if (space.p() == 1.0) return 2 * d;
  if (std::isinf(space.p())) return d >= 63 ? 0 : (std::size_t{1} << d);
  return 0;
}

std::vector<Vector> extreme_points(const NormedSpace& space) {
  const std::size_t d = space.dim();
  std::vector<Vector> out;
  if (d == 1) {
    out.push_back({{1.0 / space.scale(0)}});
    out.push_back({{-1.0 / space.scale(0)}});
  } else if (space.p() == 1.0) {
    for (std::size_t i = 0; i < d; ++i) {
      for (double s : {1.0, -1.0}) {
        Vector v{std::vector<double>(d, 0.0)};
        v.coords[i] = s / space.scale(i);
        out.push_back(std::move(v));
      }
    }
  } else if (std::isinf(space.p())) {
    const std::size_t count = extreme_point_count(space);
    if (count == 0) throw BudgetExceeded("too many hypercube vertices");
    for (std::size_t k = 0; k < count; ++k) {
      Vector v{std::vector<double>(d)};
      for (std::size_t i = 0; i < d; ++i) {
        const bool neg = (k >> (d - 1 - i)) & 1U;
        v.coords[i] = (neg ? -1.0 : 1.0) / space.scale(i);
      }
      out.push_back(std::move(v));
    }
  } else {
    throw Unsupported("extreme points are only enumerated for l1/linf balls, "
                      "got " + space.describe());
  }
  return out;
}

}  // namespace tnl

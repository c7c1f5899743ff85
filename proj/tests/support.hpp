#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "tnl/spaces.hpp"
#include "tnl/tensor.hpp"

namespace tnl::test {

inline std::vector<NormedSpace> ell(std::vector<std::size_t> dims, double p) {
  std::vector<NormedSpace> out;
  for (auto d : dims) out.push_back(NormedSpace::ellp(d, p));
  return out;
}

inline Tensor matrix(const std::vector<NormedSpace>& f, std::vector<double> c) {
  return Tensor(TensorSpace(f), std::move(c));
}

inline Eigen::MatrixXd as_matrix(const Tensor& z) {
  const auto d = z.space.dims();
  Eigen::MatrixXd m(d[0], d[1]);
  for (std::size_t i = 0; i < d[0]; ++i)
    for (std::size_t j = 0; j < d[1]; ++j) m(i, j) = z.coeffs[i * d[1] + j];
  return m;
}

inline double largest_singular(const Tensor& z) {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(as_matrix(z)).singularValues()(0);
}

inline double nuclear(const Tensor& z) {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(as_matrix(z)).singularValues().sum();
}

// Every +-1 vector of length d.
inline std::vector<std::vector<double>> sign_vectors(std::size_t d) {
  std::vector<std::vector<double>> out;
  for (std::size_t m = 0; m < (std::size_t{1} << d); ++m) {
    std::vector<double> v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = (m >> i) & 1 ? -1.0 : 1.0;
    out.push_back(v);
  }
  return out;
}

// Extreme points of the dual ball of an unweighted l1 or l_inf factor.
inline std::vector<std::vector<double>> dual_vertices(const NormedSpace& s) {
  if (s.p() == 1.0) return sign_vectors(s.dim());
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (double sg : {1.0, -1.0}) {
      std::vector<double> e(s.dim(), 0.0);
      e[i] = sg;
      out.push_back(e);
    }
  return out;
}

// Injective norm by full enumeration of dual-ball vertices on every factor.
inline double injective_by_vertices(const Tensor& z) {
  const std::size_t n = z.space.order();
  std::vector<std::vector<std::vector<double>>> pts;
  for (const auto& f : z.space.factors()) pts.push_back(dual_vertices(f));
  const auto dims = z.space.dims();
  std::vector<std::size_t> idx(n, 0);
  double best = 0.0;
  while (true) {
    double s = 0.0;
    std::vector<std::size_t> k(n, 0);
    for (std::size_t flat = 0; flat < z.coeffs.size(); ++flat) {
      double w = z.coeffs[flat];
      std::size_t r = flat;
      for (std::size_t l = n; l-- > 0;) {
        w *= pts[l][idx[l]][r % dims[l]];
        r /= dims[l];
      }
      s += w;
    }
    best = std::max(best, std::abs(s));
    std::size_t l = n;
    while (l-- > 0) {
      if (++idx[l] < pts[l].size()) break;
      idx[l] = 0;
    }
    if (l == static_cast<std::size_t>(-1)) break;
  }
  return best;
}

// 2-summing ratio ||X||_F / ||X||_2 of the identity on l2^2, maximized by
// brute force over families of up to `max_members` vectors whose angles lie
// on a grid of `angles` steps in [0, pi) and whose lengths are 1 or 2.
inline double identity_two_summing_oracle(std::size_t max_members, int angles = 12) {
  const double pi = std::acos(-1.0);
  double best = 0.0;
  for (std::size_t m = 1; m <= max_members; ++m) {
    std::vector<int> idx(2 * m, 0);
    while (true) {
      double a = 0.0, b = 0.0, c = 0.0;  // Gram entries of X X^T
      for (std::size_t j = 0; j < m; ++j) {
        const double len = j == 0 ? 1.0 : 1.0 + idx[2 * j + 1];
        const double t = pi * idx[2 * j] / angles;
        const double x = len * std::cos(t), y = len * std::sin(t);
        a += x * x;
        b += x * y;
        c += y * y;
      }
      const double top = 0.5 * (a + c) + std::sqrt(0.25 * (a - c) * (a - c) + b * b);
      best = std::max(best, std::sqrt((a + c) / top));
      std::size_t k = idx.size();
      while (k-- > 0) {
        const int lim = k % 2 == 0 ? angles : (k == 1 ? 1 : 2);
        if (++idx[k] < lim) break;
        idx[k] = 0;
      }
      if (k == static_cast<std::size_t>(-1)) break;
    }
  }
  return best;
}

}  // namespace tnl::test

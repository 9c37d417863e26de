#pragma once

// Test-side oracles. These recompute quantities from first principles with
// plain loops (classical Gram-Schmidt, direct sums) and deliberately avoid the
// library's QR, enumeration and 1-D sampler code.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "latgauss/basis.hpp"

namespace latgauss::testing {

// b_j = sum_i r_ij q_i from classical Gram-Schmidt on the columns.
struct ClassicalGs {
  Matrix q;
  Matrix r;
};

inline ClassicalGs classical_gs(const Matrix& b) {
  const Eigen::Index n = b.cols();
  ClassicalGs g{Matrix::Zero(b.rows(), n), Matrix::Zero(n, n)};
  for (Eigen::Index j = 0; j < n; ++j) {
    Vector v = b.col(j);
    for (Eigen::Index i = 0; i < j; ++i) {
      g.r(i, j) = g.q.col(i).dot(b.col(j));
      v -= g.r(i, j) * g.q.col(i);
    }
    g.r(j, j) = v.norm();
    g.q.col(j) = v / g.r(j, j);
  }
  return g;
}

// sum_{k} exp(-(k - mu)^2 / (2 sigma^2)) over a window wide enough that the
// remainder is far below double precision.
inline double direct_rho(double mu, double sigma) {
  const double half = 40.0 * sigma + 2.0;
  double s = 0.0;
  for (long k = static_cast<long>(std::floor(mu - half)); k <= static_cast<long>(std::ceil(mu + half)); ++k) {
    s += std::exp(-(k - mu) * (k - mu) / (2.0 * sigma * sigma));
  }
  return s;
}

// prod_i rho_{sigma_i, x~_i}(Z) for state x.
inline double direct_klein_normalizer(const ClassicalGs& g, double sigma, const Vector& c,
                                      const std::vector<long>& x) {
  const Eigen::Index n = g.r.rows();
  const Vector cp = g.q.transpose() * c;
  double prod = 1.0;
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    double acc = cp[i];
    for (Eigen::Index j = i + 1; j < n; ++j) acc -= g.r(i, j) * static_cast<double>(x[static_cast<std::size_t>(j)]);
    prod *= direct_rho(acc / g.r(i, i), sigma / g.r(i, i));
  }
  return prod;
}

// Random correlated 2-D basis [[1, t], [0, h]] under a random rotation.
inline Matrix correlated_2d(std::mt19937_64& gen, double t_lo = 0.3, double t_hi = 0.5,
                            double h_lo = 0.4, double h_hi = 0.7, double scale = 1.0) {
  std::uniform_real_distribution<double> ut(t_lo, t_hi), uh(h_lo, h_hi), ua(0.0, 2.0 * std::numbers::pi);
  const double t = ut(gen), h = uh(gen), a = ua(gen);
  Matrix rot(2, 2);
  rot << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  Matrix b(2, 2);
  b << 1.0, t, 0.0, h;
  return scale * rot * b;
}

// min over the box [-k, k]^2 of q(x) / pi(x), i.e. of
// rho_{sigma,c}(L) / prod_i rho_{sigma_i, x~_i}(Z), with rho_{sigma,c}(L)
// summed over the same box.
inline double brute_force_delta_2d(const Matrix& b, double sigma, const Vector& c, long k) {
  const ClassicalGs g = classical_gs(b);
  double mass = 0.0;
  for (long x1 = -k; x1 <= k; ++x1) {
    for (long x2 = -k; x2 <= k; ++x2) {
      const Vector p = b.col(0) * static_cast<double>(x1) + b.col(1) * static_cast<double>(x2) - c;
      mass += std::exp(-p.squaredNorm() / (2.0 * sigma * sigma));
    }
  }
  double best = std::numeric_limits<double>::infinity();
  for (long x1 = -k; x1 <= k; ++x1) {
    for (long x2 = -k; x2 <= k; ++x2) {
      best = std::min(best, mass / direct_klein_normalizer(g, sigma, c, {x1, x2}));
    }
  }
  return best;
}

}  // namespace latgauss::testing

namespace latgauss::testing {

// Wilson-Hilferty approximation to the upper 0.001 quantile of chi-square
// with k degrees of freedom.
inline double chi2_critical_0001(int k) {
  const double z = 3.090232306167813;
  const double a = 2.0 / (9.0 * k);
  return k * std::pow(1.0 - a + z * std::sqrt(a), 3.0);
}

// Pearson statistic with bins of expected count < 5 pooled together.
// Returns {statistic, degrees of freedom}.
inline std::pair<double, int> pooled_chi2(const std::vector<double>& expected_prob,
                                          const std::vector<long>& observed, long total) {
  double stat = 0.0, pool_e = 0.0, pool_o = 0.0;
  int bins = 0;
  for (std::size_t i = 0; i < expected_prob.size(); ++i) {
    const double e = expected_prob[i] * static_cast<double>(total);
    if (e < 5.0) {
      pool_e += e;
      pool_o += static_cast<double>(observed[i]);
      continue;
    }
    const double d = static_cast<double>(observed[i]) - e;
    stat += d * d / e;
    ++bins;
  }
  if (pool_e >= 5.0) {
    stat += (pool_o - pool_e) * (pool_o - pool_e) / pool_e;
    ++bins;
  }
  return {stat, bins - 1};
}

}  // namespace latgauss::testing

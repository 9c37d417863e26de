#include "latgauss/theta.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "latgauss/enumerate.hpp"
#include "latgauss/error.hpp"

namespace latgauss {

double jacobi_theta3(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw Error(ErrorCode::kNonPositiveTau, "tau must be positive and finite");
  }
  if (tau < 0.1) return jacobi_theta3(1.0 / tau) / std::sqrt(tau);
  double tail = 0.0;
  for (int k = 1;; ++k) {
    const double term = std::exp(-std::numbers::pi * tau * k * k);
    if (term < 1e-17) break;
    tail += term;
  }
  return 1.0 + 2.0 * tail;
}

namespace {

double log_ball_count_bound(const Vector& gs, double r) {
  double s = 0.0;
  for (int i = 0; i < gs.size(); ++i) s += std::log1p(2.0 * r / gs[i]);
  return s;
}

}  // namespace

double gaussian_shell_tail_bound(const Vector& gs, double a, double u_start) {
  const double n = static_cast<double>(gs.size());
  double total = 0.0;
  for (int j = 0; j < 100000; ++j) {
    const double u = u_start + j;
    const double term =
        std::exp(log_ball_count_bound(gs, std::sqrt((u + 1.0) / a)) - u);
    // Successive terms shrink at least by this ratio from here on.
    const double ratio = std::exp(-1.0) * std::pow((u + 2.0) / (u + 1.0), n / 2.0);
    if (ratio < 0.9) return total + term / (1.0 - ratio);
    total += term;
  }
  return total;
}

namespace {

using DistanceFn = std::function<std::vector<double>(const LatticeBasis&, const Vector&,
                                                     double, const EnumerationOptions&)>;

ThetaValue theta_direct(const LatticeBasis& basis, double tau, double tol,
                        std::uint64_t node_budget, const DistanceFn& distances) {
  const LatticeBasis reduced = lll_reduce(basis);
  const double a = std::numbers::pi * tau;
  int u0 = 0;
  double tail = gaussian_shell_tail_bound(reduced.gs_norms(), a, 0.0);
  while (!(tail < tol)) {
    if (++u0 > 100000) {
      throw Error(ErrorCode::kEnumerationBudgetExceeded, "theta tail certificate diverged");
    }
    tail = gaussian_shell_tail_bound(reduced.gs_norms(), a, u0);
  }
  const double radius = std::sqrt(u0 / a);
  const Vector origin = Vector::Zero(reduced.dim());
  std::vector<double> d2 = distances(reduced, origin, radius, EnumerationOptions{node_budget});
  std::sort(d2.begin(), d2.end(), std::greater<>());
  CompensatedSum sum;
  for (double v : d2) sum.add(std::exp(-a * v));
  ThetaValue out;
  out.value = sum.value();
  out.tail_bound = tail;
  out.radius_used = radius;
  out.terms = static_cast<std::int64_t>(d2.size());
  return out;
}

ThetaValue theta_impl(const LatticeBasis& basis, double tau, const ThetaOptions& opts,
                      const DistanceFn& distances) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw Error(ErrorCode::kNonPositiveTau, "tau must be positive and finite");
  }
  if (tau >= opts.tau_switch) {
    return theta_direct(basis, tau, opts.tol, opts.node_budget, distances);
  }
  const double n = basis.dim();
  const double factor = 1.0 / (basis.det_abs() * std::pow(tau, n / 2.0));
  const LatticeBasis dual = dual_basis(basis).reversed_basis();
  ThetaValue out = theta_direct(dual, 1.0 / tau, opts.tol / factor, opts.node_budget, distances);
  out.value *= factor;
  out.tail_bound *= factor;
  out.via_dual = true;
  return out;
}

}  // namespace

ThetaValue theta_lattice(const LatticeBasis& basis, double tau, const ThetaOptions& opts) {
  return theta_impl(basis, tau, opts,
                    [](const LatticeBasis& b, const Vector& c, double r,
                       const EnumerationOptions& o) { return ball_squared_distances(b, c, r, o); });
}

namespace reference {

ThetaValue theta_lattice(const LatticeBasis& basis, double tau, const ThetaOptions& opts) {
  return theta_impl(basis, tau, opts,
                    [](const LatticeBasis& b, const Vector& c, double r,
                       const EnumerationOptions& o) {
                      return reference::ball_squared_distances(b, c, r, o);
                    });
}

}  // namespace reference
}  // namespace latgauss

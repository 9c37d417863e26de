#include "latgauss/convergence.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "latgauss/enumerate.hpp"
#include "latgauss/error.hpp"

namespace latgauss {

namespace {

const double kLogTheta3At1 = std::log(jacobi_theta3(1.0));

double log_theta(const LatticeBasis& basis, double tau, const ThetaOptions& opts) {
  return std::log(theta_lattice(basis, tau, opts).value);
}

void check_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::kInvalidArgument, std::string(name) + " must be positive and finite");
  }
}

}  // namespace

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::kSmallSSmooth: return "SMALL_S_SMOOTH";
    case Regime::kSmallS: return "SMALL_S";
    case Regime::kMidS: return "MID_S";
    case Regime::kLargeS: return "LARGE_S";
    case Regime::kLargeSSmooth: return "LARGE_S_SMOOTH";
  }
  return "?";
}

TableBound delta_table_bound(const LatticeBasis& basis, double s,
                             std::optional<double> omega_log_n, const ThetaOptions& theta) {
  check_positive(s, "s");
  const int n = basis.dim();
  const double omega = omega_log_n.value_or(std::log(static_cast<double>(n)));
  const double lo = basis.min_gs_norm();
  const double hi = basis.max_gs_norm();
  const double smooth = omega > 0.0 ? std::sqrt(2.0 * std::numbers::pi * omega) : 0.0;

  TableBound out;
  for (int i = 0; i < n; ++i) out.m += s > basis.gs_norms()[i] ? 1 : 0;

  if (s > hi) {
    out.regime = smooth > 0.0 && s >= smooth * hi ? Regime::kLargeSSmooth : Regime::kLargeS;
    const LatticeBasis dual = dual_basis(basis).reversed_basis();
    out.bound = std::exp(-n * kLogTheta3At1 + log_theta(dual, s * s, theta));
    return out;
  }
  const double log_t = log_theta(basis, 1.0 / (s * s), theta);
  if (s < lo) {
    out.regime = smooth > 0.0 && s <= lo / smooth ? Regime::kSmallSSmooth : Regime::kSmallS;
    out.bound = std::exp(-n * kLogTheta3At1 + log_t);
    return out;
  }
  out.regime = Regime::kMidS;
  double log_b = -(n - out.m) * kLogTheta3At1 - out.m * std::numbers::ln2 + log_t;
  for (int i = 0; i < n; ++i) {
    if (s > basis.gs_norms()[i]) log_b += std::log(basis.gs_norms()[i] / s);
  }
  out.bound = std::exp(log_b);
  return out;
}

DeltaReport delta_coefficient(const LatticeBasis& basis, double sigma, const DeltaOptions& opts) {
  check_positive(sigma, "sigma");
  DeltaReport r;
  r.sigma = sigma;
  r.s = std::sqrt(2.0 * std::numbers::pi) * sigma;
  r.log_theta = log_theta(basis, 1.0 / (r.s * r.s), opts.theta);
  for (int i = 0; i < basis.dim(); ++i) {
    const double si = r.s / basis.gs_norms()[i];
    r.log_theta3_prod += std::log(jacobi_theta3(1.0 / (si * si)));
  }
  r.delta = std::min(1.0, std::exp(r.log_theta - r.log_theta3_prod));
  if (opts.with_table_bound) {
    const TableBound tb = delta_table_bound(basis, r.s, opts.omega_log_n, opts.theta);
    r.regime = tb.regime;
    r.table_bound = tb.bound;
    r.m = tb.m;
  }
  r.mixing_time_001 = mixing_time_upper(r.delta, 0.01);
  return r;
}

double delta_prime_lower_bound(const LatticeBasis& basis, double sigma, const Vector& c,
                               const DeltaOptions& opts) {
  DeltaOptions o = opts;
  o.with_table_bound = false;
  const double delta = delta_coefficient(basis, sigma, o).delta;
  const double d = cvp_exact(basis, c).distance;
  return std::exp(-d * d / (2.0 * sigma * sigma)) * delta;
}

double flatness_factor(const LatticeBasis& basis, double sigma, const ThetaOptions& theta) {
  check_positive(sigma, "sigma");
  const double s = std::sqrt(2.0 * std::numbers::pi) * sigma;
  const double tau = 1.0 / (s * s);
  if (tau < theta.tau_switch) {
    // Jacobi's formula cancels the prefactor exactly.
    const LatticeBasis dual = dual_basis(basis).reversed_basis();
    return theta_lattice(dual, 1.0 / tau, theta).value - 1.0;
  }
  const double log_v = std::log(basis.det_abs()) - basis.dim() * std::log(s) +
                       log_theta(basis, tau, theta);
  return std::expm1(log_v);
}

double beta_coefficient(const LatticeBasis& basis, double sigma, double sigma_bar,
                        const Vector& c) {
  check_positive(sigma, "sigma");
  if (!(sigma_bar >= sigma) || !std::isfinite(sigma_bar)) {
    throw Error(ErrorCode::kInvalidSigmaBar, "sigma_bar must be at least sigma");
  }
  double log_beta = 0.0;
  for (int i = 0; i < basis.dim(); ++i) {
    const double g2 = basis.gs_norms()[i] * basis.gs_norms()[i];
    log_beta += std::log(jacobi_theta3(g2 / (2.0 * std::numbers::pi * sigma * sigma)));
    log_beta -= std::log(jacobi_theta3(g2 / (2.0 * std::numbers::pi * sigma_bar * sigma_bar)));
  }
  if (sigma_bar > sigma) {
    const double d = cvp_exact(basis, c).distance;
    log_beta -= (1.0 / (2.0 * sigma_bar * sigma_bar) - 1.0 / (2.0 * sigma * sigma)) * d * d;
  }
  return std::exp(log_beta);
}

std::optional<double> beta_crossing_sigma2(const LatticeBasis& basis, double ratio,
                                           const Vector& c, double lo, double hi, double tol) {
  auto f = [&](double s2) {
    const double sigma = std::sqrt(s2);
    return beta_coefficient(basis, sigma, ratio * sigma, c) - 1.0;
  };
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if ((f_lo > 0.0) == (f_hi > 0.0)) return std::nullopt;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::int64_t mixing_time_upper(double delta, double epsilon) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw Error(ErrorCode::kDeltaOutOfRange, "delta must lie in (0, 1]");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must lie in (0, 1)");
  }
  if (delta == 1.0) return 1;
  const double t = std::ceil(std::log(epsilon) / std::log1p(-delta));
  if (!(t < 9.2e18)) return std::numeric_limits<std::int64_t>::max();
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(t));
}

double mixing_time_loose(double delta, double epsilon) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw Error(ErrorCode::kDeltaOutOfRange, "delta must lie in (0, 1]");
  }
  return -std::log(epsilon) / delta;
}

double spectral_gap_lower(double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw Error(ErrorCode::kDeltaOutOfRange, "delta must lie in (0, 1]");
  }
  return delta * delta / 8.0;
}

double spectral_mixing_bound(double delta, double pi_min, double epsilon) {
  return -std::log(pi_min * epsilon) / spectral_gap_lower(delta);
}

double rosenthal_bound(double delta, double lambda, double b, double d, double r, double v_x0,
                       std::int64_t n_steps) {
  auto fail = [](const char* what) { throw Error(ErrorCode::kPreconditionViolated, what); };
  if (!(delta > 0.0 && delta < 1.0)) fail("0 < delta < 1");
  if (!(lambda > 0.0 && lambda < 1.0)) fail("0 < lambda < 1");
  if (!(b >= 0.0) || !std::isfinite(b)) fail("0 <= b < inf");
  if (!(d > 2.0 * b / (1.0 - lambda))) fail("d > 2b/(1-lambda)");
  if (!(r > 0.0 && r < 1.0)) fail("0 < r < 1");
  if (!(v_x0 >= 1.0)) fail("V(x0) >= 1");
  if (n_steps < 0) fail("n_steps >= 0");
  const double alpha = (1.0 + d) / (1.0 + 2.0 * b + lambda * d);
  const double u = 1.0 + 2.0 * (d + b);
  const double n = static_cast<double>(n_steps);
  const double log_rate = r * std::log(u) - (1.0 - r) * std::log(alpha);
  return std::pow(1.0 - delta, r * n) +
         std::exp(n * log_rate) * (1.0 + b / (1.0 - lambda) + v_x0);
}

}  // namespace latgauss

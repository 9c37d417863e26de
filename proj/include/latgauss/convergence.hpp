#pragma once

#include <cstdint>
#include <optional>

#include "latgauss/basis.hpp"
#include "latgauss/theta.hpp"

namespace latgauss {

// Rows of the regime table for delta as a function of s = sqrt(2 pi) sigma.
enum class Regime { kSmallSSmooth, kSmallS, kMidS, kLargeS, kLargeSSmooth };

const char* to_string(Regime regime);

struct TableBound {
  Regime regime = Regime::kMidS;
  double bound = 0.0;
  int m = 0;  // #{i : s > gs_i}
};

// omega_log_n defaults to log n; a non-positive value disables the smooth rows.
// Smooth rows report the rigorous bound of the adjacent small/large row.
TableBound delta_table_bound(const LatticeBasis& basis, double s,
                             std::optional<double> omega_log_n = std::nullopt,
                             const ThetaOptions& theta = {});

struct DeltaOptions {
  std::optional<double> omega_log_n;
  ThetaOptions theta;
  bool with_table_bound = true;
};

struct DeltaReport {
  double sigma = 0.0;
  double s = 0.0;
  double delta = 0.0;
  double log_theta = 0.0;       // log Theta_L(1/s^2)
  double log_theta3_prod = 0.0;  // sum_i log theta3(1/s_i^2)
  Regime regime = Regime::kMidS;
  double table_bound = 0.0;
  int m = 0;
  std::int64_t mixing_time_001 = 1;
};

// delta = Theta_L(1/s^2) / prod_i theta3(1/s_i^2), s_i = s / gs_i.
DeltaReport delta_coefficient(const LatticeBasis& basis, double sigma,
                              const DeltaOptions& opts = {});

// exp(-d(L,c)^2 / (2 sigma^2)) * delta.
double delta_prime_lower_bound(const LatticeBasis& basis, double sigma, const Vector& c,
                               const DeltaOptions& opts = {});

// det / (sqrt(2 pi) sigma)^n * Theta_L(1 / (2 pi sigma^2)) - 1.
double flatness_factor(const LatticeBasis& basis, double sigma, const ThetaOptions& theta = {});

// prod_i rho_{sigma_i}(Z) / prod_i rho_{sigmabar_i}(Z)
//   * exp(-(1/(2 sigmabar^2) - 1/(2 sigma^2)) d(L,c)^2).
// Throws kInvalidSigmaBar when sigma_bar < sigma.
double beta_coefficient(const LatticeBasis& basis, double sigma, double sigma_bar,
                        const Vector& c);

// Bisection for beta(sigma, ratio * sigma) = 1 over sigma^2 in [lo, hi].
// Empty when beta - 1 has the same sign at both ends.
std::optional<double> beta_crossing_sigma2(const LatticeBasis& basis, double ratio,
                                           const Vector& c, double lo, double hi,
                                           double tol = 1e-6);

// ceil(ln eps / ln(1 - delta)), at least 1; saturates at INT64_MAX.
std::int64_t mixing_time_upper(double delta, double epsilon);
// -ln eps / delta.
double mixing_time_loose(double delta, double epsilon);

// delta^2 / 8.
double spectral_gap_lower(double delta);
// -ln(pi_min * eps) * 8 / delta^2.
double spectral_mixing_bound(double delta, double pi_min, double epsilon);

// (1-delta)^{r n} + (U^r / alpha^{1-r})^n (1 + b/(1-lambda) + V(x0)),
// alpha = (1+d)/(1+2b+lambda d), U = 1 + 2(d+b).
double rosenthal_bound(double delta, double lambda, double b, double d, double r, double v_x0,
                       std::int64_t n_steps);

}  // namespace latgauss

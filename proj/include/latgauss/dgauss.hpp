#pragma once

#include <cstdint>

#include "latgauss/rng.hpp"

namespace latgauss {

// Support half-width in standard deviations. Mass beyond it is below 1e-30
// relative to the mode.
inline constexpr double kTailCut = 12.0;

struct IntegerSupport {
  std::int64_t lo;
  std::int64_t hi;
};

// [floor(mu - 12 sigma), ceil(mu + 12 sigma)]; shifting mu by an integer
// shifts the support by the same integer.
IntegerSupport dgauss_support(double mu, double sigma);

// log sum_{k in support} exp(-(k - mu)^2 / (2 sigma^2)).
double log_rho_1d(double mu, double sigma);

struct DgaussDraw {
  std::int64_t value;
  double log_normalizer;  // log_rho_1d(mu, sigma)
};

// Exact inverse-CDF draw from D_{Z, sigma, mu} restricted to the support.
DgaussDraw sample_dgauss_1d_draw(double mu, double sigma, RngStream& rng);

inline std::int64_t sample_dgauss_1d(double mu, double sigma, RngStream& rng) {
  return sample_dgauss_1d_draw(mu, sigma, rng).value;
}

}  // namespace latgauss

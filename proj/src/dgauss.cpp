#include "latgauss/dgauss.hpp"

#include <cmath>
#include <string>

#include "latgauss/error.hpp"
#include "latgauss/types.hpp"

namespace latgauss {
namespace {

void check(double mu, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma) || !std::isfinite(mu)) {
    throw Error(ErrorCode::kInvalidArgument,
                "1-D discrete Gaussian needs finite mu and sigma > 0");
  }
}

// Largest exponent over the support: attained at the integer nearest mu.
double max_exponent(double mu, double inv2s2) {
  const double d = mu - std::round(mu);
  return -d * d * inv2s2;
}

}  // namespace

IntegerSupport dgauss_support(double mu, double sigma) {
  check(mu, sigma);
  return {static_cast<std::int64_t>(std::floor(mu - kTailCut * sigma)),
          static_cast<std::int64_t>(std::ceil(mu + kTailCut * sigma))};
}

double log_rho_1d(double mu, double sigma) {
  const IntegerSupport s = dgauss_support(mu, sigma);
  const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
  const double m = max_exponent(mu, inv2s2);
  CompensatedSum acc;
  for (std::int64_t k = s.lo; k <= s.hi; ++k) {
    const double d = static_cast<double>(k) - mu;
    acc.add(std::exp(-d * d * inv2s2 - m));
  }
  return m + std::log(acc.value());
}

DgaussDraw sample_dgauss_1d_draw(double mu, double sigma, RngStream& rng) {
  const IntegerSupport s = dgauss_support(mu, sigma);
  const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
  const double m = max_exponent(mu, inv2s2);
  auto weight = [&](std::int64_t k) {
    const double d = static_cast<double>(k) - mu;
    return std::exp(-d * d * inv2s2 - m);
  };
  CompensatedSum total;
  for (std::int64_t k = s.lo; k <= s.hi; ++k) total.add(weight(k));
  const double z = total.value();

  const double target = rng.uniform01() * z;
  double cum = 0.0;
  std::int64_t value = s.lo;
  for (std::int64_t k = s.lo; k <= s.hi; ++k) {
    const double w = weight(k);
    if (w <= 0.0) continue;
    value = k;  // rounding fallback: last positive-weight point
    cum += w;
    if (target < cum) break;
  }
  return {value, m + std::log(z)};
}

}  // namespace latgauss

#include "latgauss/klein.hpp"

#include <cmath>

#include "latgauss/dgauss.hpp"
#include "latgauss/error.hpp"

namespace latgauss {

void GaussianParams::validate(int dim) const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::kInvalidArgument, "sigma must be positive and finite");
  }
  if (center.size() != dim) {
    throw Error(ErrorCode::kDimensionMismatch, "center dimension differs from basis");
  }
  if (!center.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "center must be finite");
  }
}

KleinSampler::KleinSampler(const LatticeBasis& basis, GaussianParams params)
    : basis_(&basis), params_(std::move(params)) {
  params_.validate(basis.dim());
  rotated_center_ = basis.rotate(params_.center);
  level_sigma_ = params_.sigma * basis.gs_norms().cwiseInverse();
}

KleinDraw KleinSampler::draw(RngStream& rng) const {
  const int n = basis_->dim();
  const Matrix& r = basis_->r();
  KleinDraw out{IntVector::Zero(n), 0.0};
  for (int i = n - 1; i >= 0; --i) {
    double acc = rotated_center_[i];
    for (int j = i + 1; j < n; ++j) acc -= r(i, j) * static_cast<double>(out.x[j]);
    const DgaussDraw d = sample_dgauss_1d_draw(acc / r(i, i), level_sigma_[i], rng);
    out.x[i] = d.value;
    out.log_normalizer += d.log_normalizer;
  }
  return out;
}

double KleinSampler::log_normalizer(const IntVector& x) const {
  const int n = basis_->dim();
  if (x.size() != n) throw Error(ErrorCode::kDimensionMismatch, "state dimension");
  const Matrix& r = basis_->r();
  double total = 0.0;
  for (int i = n - 1; i >= 0; --i) {
    double acc = rotated_center_[i];
    for (int j = i + 1; j < n; ++j) acc -= r(i, j) * static_cast<double>(x[j]);
    total += log_rho_1d(acc / r(i, i), level_sigma_[i]);
  }
  return total;
}

double KleinSampler::log_target_unnorm(const IntVector& x) const {
  if (x.size() != basis_->dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "state dimension");
  }
  const double s = params_.sigma;
  return -(basis_->point(x) - params_.center).squaredNorm() / (2.0 * s * s);
}

double KleinSampler::log_density(const IntVector& x) const {
  return log_target_unnorm(x) - log_normalizer(x);
}

IntVector klein_sample(const LatticeBasis& basis, const GaussianParams& params,
                       RngStream& rng) {
  return KleinSampler(basis, params).draw(rng).x;
}

double klein_log_density(const LatticeBasis& basis, const GaussianParams& params,
                         const IntVector& x) {
  return KleinSampler(basis, params).log_density(x);
}

SymmetricKleinProposal::SymmetricKleinProposal(const LatticeBasis& basis, double sigma)
    : basis_(&basis), sigma_(sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::kInvalidArgument, "sigma must be positive and finite");
  }
  level_sigma_ = sigma * basis.gs_norms().cwiseInverse();
}

KleinDraw SymmetricKleinProposal::draw(const IntVector& x, RngStream& rng) const {
  const int n = basis_->dim();
  if (x.size() != n) throw Error(ErrorCode::kDimensionMismatch, "state dimension");
  const Matrix& r = basis_->r();
  IntVector z = IntVector::Zero(n);
  double log_norm = 0.0;
  for (int i = n - 1; i >= 0; --i) {
    double acc = 0.0;
    for (int j = i + 1; j < n; ++j) acc -= r(i, j) * static_cast<double>(z[j]);
    const DgaussDraw d = sample_dgauss_1d_draw(acc / r(i, i), level_sigma_[i], rng);
    z[i] = d.value;
    log_norm += d.log_normalizer;
  }
  return {x + z, log_norm};
}

double SymmetricKleinProposal::log_normalizer_of_step(const IntVector& z) const {
  const int n = basis_->dim();
  const Matrix& r = basis_->r();
  double total = 0.0;
  for (int i = n - 1; i >= 0; --i) {
    double acc = 0.0;
    for (int j = i + 1; j < n; ++j) acc -= r(i, j) * static_cast<double>(z[j]);
    total += log_rho_1d(acc / r(i, i), level_sigma_[i]);
  }
  return total;
}

double SymmetricKleinProposal::log_density(const IntVector& x, const IntVector& y) const {
  if (x.size() != basis_->dim() || y.size() != basis_->dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "state dimension");
  }
  const IntVector z = y - x;
  const double d2 = (basis_->matrix() * to_real(z)).squaredNorm();
  return -d2 / (2.0 * sigma_ * sigma_) - log_normalizer_of_step(z);
}

}  // namespace latgauss

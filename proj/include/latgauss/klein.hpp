#pragma once

#include "latgauss/basis.hpp"
#include "latgauss/rng.hpp"

namespace latgauss {

// Target D_{Lambda, sigma, c}.
struct GaussianParams {
  double sigma = 1.0;
  Vector center;

  // Throws kInvalidArgument / kDimensionMismatch.
  void validate(int dim) const;
};

struct KleinDraw {
  IntVector x;
  // sum_i log rho_{sigma_i, x~_i}(Z) along the sampled path.
  double log_normalizer = 0.0;
};

// Klein's randomized nearest-plane sampler for a fixed basis and target.
// Coordinates are drawn backwards, i = n..1, from D_{Z, sigma_i, x~_i} with
// sigma_i = sigma / r_ii and x~_i = (c'_i - sum_{j>i} r_ij x_j) / r_ii.
class KleinSampler {
 public:
  KleinSampler(const LatticeBasis& basis, GaussianParams params);

  const LatticeBasis& basis() const { return *basis_; }
  const GaussianParams& params() const { return params_; }

  KleinDraw draw(RngStream& rng) const;

  // log prod_i rho_{sigma_i, x~_i}(Z) for a given x.
  double log_normalizer(const IntVector& x) const;

  // log P_Klein(x) = -||Bx - c||^2 / (2 sigma^2) - log_normalizer(x).
  double log_density(const IntVector& x) const;

  // -||Bx - c||^2 / (2 sigma^2).
  double log_target_unnorm(const IntVector& x) const;

 private:
  const LatticeBasis* basis_;
  GaussianParams params_;
  Vector rotated_center_;
  Vector level_sigma_;
};

IntVector klein_sample(const LatticeBasis& basis, const GaussianParams& params,
                       RngStream& rng);
double klein_log_density(const LatticeBasis& basis, const GaussianParams& params,
                         const IntVector& x);

// Proposal of the symmetric chain: Klein's sampler centered at Bx. Only the
// step z = y - x matters, drawn as z_i ~ D_{Z, sigma_i, phi_i} with
// phi_i = -sum_{j>i} (r_ij / r_ii) z_j.
class SymmetricKleinProposal {
 public:
  SymmetricKleinProposal(const LatticeBasis& basis, double sigma);

  double sigma() const { return sigma_; }

  // Returns y = x + z and log prod_i rho_{sigma_i, phi_i}(Z).
  KleinDraw draw(const IntVector& x, RngStream& rng) const;

  // log q(x, y); depends only on y - x and is symmetric in (x, y).
  double log_density(const IntVector& x, const IntVector& y) const;

 private:
  double log_normalizer_of_step(const IntVector& z) const;

  const LatticeBasis* basis_;
  double sigma_;
  Vector level_sigma_;
};

}  // namespace latgauss

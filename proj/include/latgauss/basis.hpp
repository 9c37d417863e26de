#pragma once

#include <iosfwd>
#include <string>

#include "latgauss/types.hpp"

namespace latgauss {

// A full-rank lattice basis with its QR factorization. Basis vectors are the
// columns of `matrix()`. The R factor always has a strictly positive diagonal,
// so gs_norms()[i] == r()(i, i).
class LatticeBasis {
 public:
  // Throws kDimensionMismatch for non-square input and kSingularBasis when
  // |det B| < 1e-12 * prod_i ||b_i|| or an entry is not finite.
  explicit LatticeBasis(Matrix b);

  int dim() const { return static_cast<int>(b_.cols()); }
  const Matrix& matrix() const { return b_; }
  const Matrix& q() const { return q_; }
  const Matrix& r() const { return r_; }
  const Vector& gs_norms() const { return gs_norms_; }
  double det_abs() const { return det_abs_; }

  double min_gs_norm() const { return gs_norms_.minCoeff(); }
  double max_gs_norm() const { return gs_norms_.maxCoeff(); }

  Vector point(const IntVector& x) const { return b_ * to_real(x); }

  // Q^T c, the center expressed in the triangular frame.
  Vector rotate(const Vector& c) const { return q_.transpose() * c; }

  LatticeBasis scaled(double factor) const { return LatticeBasis(b_ * factor); }

 private:
  Matrix b_;
  Matrix q_;
  Matrix r_;
  Vector gs_norms_;
  double det_abs_ = 0.0;
};

inline LatticeBasis build_basis(const Matrix& b) { return LatticeBasis(b); }

// LLL reduction with Lovasz parameter delta_lll in (0.25, 1). The result spans
// the same lattice: B' = B U with U unimodular.
LatticeBasis lll_reduce(const LatticeBasis& basis, double delta_lll = 0.99);

// Integer change of basis U with reduced = original * U, computed alongside
// the reduction.
struct LllResult {
  LatticeBasis basis;
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> transform;
};
LllResult lll_reduce_with_transform(const LatticeBasis& basis,
                                    double delta_lll = 0.99);

// Nearest-plane rounding: x_i = round((c'_i - sum_{j>i} r_ij x_j) / r_ii) for
// i = n..1 with c' = Q^T c, ties to even.
IntVector babai_nearest_plane(const LatticeBasis& basis, const Vector& c);

// B* = B^{-T}. `gs_norms_star` is the Gram-Schmidt profile of the dual basis
// taken in reversed column order, which satisfies
//   gs_norms_star[i] * gs_norms[n-1-i] == 1.
struct DualBasis {
  Matrix b_star;
  Vector gs_norms_star;

  // Reversed-order dual basis as a LatticeBasis; its gs_norms() equal
  // gs_norms_star.
  LatticeBasis reversed_basis() const;
};

DualBasis dual_basis(const LatticeBasis& basis);

// Plain-text basis format: first line n, then n rows of n reals (rows of B).
LatticeBasis read_basis(std::istream& in);
LatticeBasis read_basis_file(const std::string& path);
void write_basis(std::ostream& out, const LatticeBasis& basis);

}  // namespace latgauss

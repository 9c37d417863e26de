#include "latgauss/basis.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "latgauss/error.hpp"

namespace latgauss {

LatticeBasis::LatticeBasis(Matrix b) : b_(std::move(b)) {
  if (b_.rows() != b_.cols() || b_.rows() == 0) {
    throw Error(ErrorCode::kDimensionMismatch,
                "basis must be a non-empty square matrix, got " +
                    std::to_string(b_.rows()) + "x" + std::to_string(b_.cols()));
  }
  if (!b_.allFinite()) {
    throw Error(ErrorCode::kSingularBasis, "basis has non-finite entries");
  }
  const int n = dim();

  Eigen::HouseholderQR<Matrix> qr(b_);
  q_ = qr.householderQ() * Matrix::Identity(n, n);
  r_ = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    if (r_(i, i) < 0.0) {
      r_.row(i) *= -1.0;
      q_.col(i) *= -1.0;
    }
  }

  gs_norms_ = r_.diagonal();
  double log_det = 0.0;
  double log_hadamard = 0.0;
  for (int i = 0; i < n; ++i) {
    log_det += std::log(gs_norms_[i]);
    log_hadamard += std::log(b_.col(i).norm());
  }
  if (!(gs_norms_.minCoeff() > 0.0) || log_det - log_hadamard < std::log(1e-12)) {
    throw Error(ErrorCode::kSingularBasis,
                "basis columns are (numerically) linearly dependent");
  }
  det_abs_ = std::exp(log_det);
}

IntVector babai_nearest_plane(const LatticeBasis& basis, const Vector& c) {
  const int n = basis.dim();
  if (c.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "center dimension differs from basis");
  }
  const Matrix& r = basis.r();
  const Vector t = basis.rotate(c);
  IntVector x(n);
  for (int i = n - 1; i >= 0; --i) {
    double acc = t[i];
    for (int j = i + 1; j < n; ++j) acc -= r(i, j) * static_cast<double>(x[j]);
    x[i] = static_cast<std::int64_t>(round_half_even(acc / r(i, i)));
  }
  return x;
}

LatticeBasis DualBasis::reversed_basis() const {
  return LatticeBasis(b_star.rowwise().reverse());
}

DualBasis dual_basis(const LatticeBasis& basis) {
  DualBasis dual;
  dual.b_star = basis.matrix().transpose().inverse();
  dual.gs_norms_star = dual.reversed_basis().gs_norms();
  return dual;
}

LatticeBasis read_basis(std::istream& in) {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorCode::kParseError, "basis file: " + msg);
  };
  std::string token;
  if (!(in >> token)) fail("missing dimension");
  long n = 0;
  try {
    std::size_t pos = 0;
    n = std::stol(token, &pos);
    if (pos != token.size()) fail("dimension is not an integer");
  } catch (const std::logic_error&) {
    fail("dimension is not an integer");
  }
  if (n <= 0 || n > 4096) fail("dimension out of range");
  Matrix b(n, n);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      if (!(in >> token)) fail("expected " + std::to_string(n * n) + " entries");
      double v = 0.0;
      try {
        std::size_t pos = 0;
        v = std::stod(token, &pos);
        if (pos != token.size()) fail("bad number '" + token + "'");
      } catch (const std::logic_error&) {
        fail("bad number '" + token + "'");
      }
      if (!std::isfinite(v)) fail("NaN/Inf entries are not allowed");
      b(i, j) = v;
    }
  }
  if (in >> token) fail("trailing data after matrix");
  return LatticeBasis(std::move(b));
}

LatticeBasis read_basis_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open basis file " + path);
  return read_basis(in);
}

void write_basis(std::ostream& out, const LatticeBasis& basis) {
  const Matrix& b = basis.matrix();
  out << b.rows() << '\n' << std::setprecision(17);
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      out << (j ? " " : "") << b(i, j);
    }
    out << '\n';
  }
}

}  // namespace latgauss

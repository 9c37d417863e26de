#include <algorithm>
#include <cmath>
#include <vector>

#include "latgauss/basis.hpp"
#include "latgauss/error.hpp"

namespace latgauss {
namespace {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Gram-Schmidt data of the columns of b: mu(i, j) for j < i and squared
// norms of the orthogonalized vectors.
struct GramSchmidt {
  Matrix mu;
  Vector norm2;
};

GramSchmidt gram_schmidt(const Matrix& b) {
  const Eigen::Index n = b.cols();
  GramSchmidt gs{Matrix::Zero(n, n), Vector::Zero(n)};
  Matrix star = b;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      gs.mu(i, j) = b.col(i).dot(star.col(j)) / gs.norm2[j];
      star.col(i) -= gs.mu(i, j) * star.col(j);
    }
    gs.norm2[i] = star.col(i).squaredNorm();
  }
  return gs;
}

}  // namespace

LllResult lll_reduce_with_transform(const LatticeBasis& basis, double delta_lll) {
  if (!(delta_lll > 0.25 && delta_lll < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "LLL parameter must lie in (0.25, 1)");
  }
  const int n = basis.dim();
  Matrix b = basis.matrix();
  IntMatrix u = IntMatrix::Identity(n, n);
  GramSchmidt gs = gram_schmidt(b);

  auto size_reduce = [&](int k, int j) {
    const double q = round_half_even(gs.mu(k, j));
    if (q == 0.0) return;
    const auto qi = static_cast<std::int64_t>(q);
    b.col(k) -= q * b.col(j);
    u.col(k) -= qi * u.col(j);
    for (int i = 0; i < j; ++i) gs.mu(k, i) -= q * gs.mu(j, i);
    gs.mu(k, j) -= q;
  };

  int k = 1;
  // Guard against floating-point cycling on pathological inputs.
  const long max_iterations = 100000L * std::max(n, 1);
  long iterations = 0;
  while (k < n) {
    if (++iterations > max_iterations) {
      throw Error(ErrorCode::kPreconditionViolated,
                  "LLL did not terminate; basis is badly conditioned");
    }
    for (int j = k - 1; j >= 0; --j) size_reduce(k, j);
    const double mu = gs.mu(k, k - 1);
    if (gs.norm2[k] >= (delta_lll - mu * mu) * gs.norm2[k - 1]) {
      ++k;
    } else {
      b.col(k).swap(b.col(k - 1));
      u.col(k).swap(u.col(k - 1));
      gs = gram_schmidt(b);
      k = std::max(k - 1, 1);
    }
  }
  // Rebuild from the original basis so the result is exactly B * U.
  Matrix reduced = basis.matrix() * u.cast<double>();
  return LllResult{LatticeBasis(std::move(reduced)), std::move(u)};
}

LatticeBasis lll_reduce(const LatticeBasis& basis, double delta_lll) {
  return lll_reduce_with_transform(basis, delta_lll).basis;
}

}  // namespace latgauss

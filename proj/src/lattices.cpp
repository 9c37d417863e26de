#include "latgauss/lattices.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <cmath>
#include <string>

#include "latgauss/enumerate.hpp"
#include "latgauss/error.hpp"

namespace latgauss {

namespace {

void expect_profile(const LatticeBasis& basis, double norm2, std::size_t count,
                    const std::string& name) {
  const ShortVectors sv = short_vector_profile(basis, norm2);
  if (std::abs(sv.min_norm2 - norm2) > 1e-9 || sv.count != count) {
    throw Error(ErrorCode::kPreconditionViolated,
                name + " basis failed its minimal-vector check (" + std::to_string(sv.count) +
                    " vectors of norm^2 " + std::to_string(sv.min_norm2) + ")");
  }
}

// Extended binary Golay code generator rows, each a 24-bit mask.
std::array<std::uint32_t, 12> golay_rows() {
  // g(x) = x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1 generates the cyclic
  // [23,12,7] code; a parity bit extends it.
  const std::uint32_t g = (1u << 11) | (1u << 10) | (1u << 6) | (1u << 5) | (1u << 4) |
                          (1u << 2) | 1u;
  std::array<std::uint32_t, 12> rows{};
  for (int k = 0; k < 12; ++k) {
    std::uint32_t w = g << k;
    if (std::popcount(w) % 2 == 1) w |= 1u << 23;
    rows[static_cast<std::size_t>(k)] = w;
  }
  return rows;
}

int golay_min_weight(const std::array<std::uint32_t, 12>& rows) {
  int best = 24;
  for (std::uint32_t m = 1; m < (1u << 12); ++m) {
    std::uint32_t w = 0;
    for (int k = 0; k < 12; ++k) {
      if (m & (1u << k)) w ^= rows[static_cast<std::size_t>(k)];
    }
    best = std::min(best, std::popcount(w));
  }
  return best;
}

// Triangular basis (rows) of the lattice spanned by `gens` plus modulus * Z^n.
// Pure rows modulus * e_c stay untouched until column c is processed, so the
// later columns of every active row may be reduced modulo `modulus`.
Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> hnf_mod(
    std::vector<std::vector<std::int64_t>> gens, int n, std::int64_t modulus) {
  using Row = std::vector<std::int64_t>;
  const auto reduce_tail = [&](Row& row, int col) {
    for (int c = col + 1; c < n; ++c) {
      auto& v = row[static_cast<std::size_t>(c)];
      v = ((v % modulus) + modulus) % modulus;
    }
  };
  for (Row& g : gens) reduce_tail(g, -1);
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> h =
      Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  for (int col = 0; col < n; ++col) {
    const auto k = static_cast<std::size_t>(col);
    Row pure(static_cast<std::size_t>(n), 0);
    pure[k] = modulus;
    gens.push_back(pure);
    // Euclid on column `col`; smallest nonzero entry becomes the pivot.
    for (;;) {
      std::size_t piv = gens.size();
      for (std::size_t r = 0; r < gens.size(); ++r) {
        const std::int64_t v = gens[r][k];
        if (v != 0 && (piv == gens.size() || std::abs(v) < std::abs(gens[piv][k]))) piv = r;
      }
      std::swap(gens[0], gens[piv]);
      bool done = true;
      for (std::size_t r = 1; r < gens.size(); ++r) {
        if (gens[r][k] == 0) continue;
        const std::int64_t f = gens[r][k] / gens[0][k];
        for (int c = col; c < n; ++c) {
          gens[r][static_cast<std::size_t>(c)] -= f * gens[0][static_cast<std::size_t>(c)];
        }
        reduce_tail(gens[r], col);
        if (gens[r][k] != 0) done = false;
      }
      if (done) break;
    }
    for (int c = 0; c < n; ++c) h(col, c) = gens[0][static_cast<std::size_t>(c)];
    gens.erase(gens.begin());
    std::erase_if(gens, [&](const Row& r) {
      return std::all_of(r.begin(), r.end(), [](std::int64_t v) { return v == 0; });
    });
  }
  return h;
}

}  // namespace

ShortVectors short_vector_profile(const LatticeBasis& basis, double expected_norm2) {
  const LatticeBasis reduced = lll_reduce(basis);
  const std::vector<double> d2 = ball_squared_distances(
      reduced, Vector::Zero(reduced.dim()), std::sqrt(expected_norm2 * (1.0 + 1e-6)));
  ShortVectors out{std::numeric_limits<double>::infinity(), 0};
  for (double v : d2) {
    if (v > 1e-9) out.min_norm2 = std::min(out.min_norm2, v);
  }
  for (double v : d2) {
    if (v > 1e-9 && std::abs(v - out.min_norm2) <= 1e-9 * (1.0 + out.min_norm2)) ++out.count;
  }
  return out;
}

NamedLattice zn_lattice(int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "Zn needs n >= 1");
  return {"Z" + std::to_string(n), LatticeBasis(Matrix::Identity(n, n)), true};
}

NamedLattice e8_lattice() {
  // Simple roots in the even coordinate system, ordered so the Gram-Schmidt
  // profile is palindromic up to inversion.
  Matrix rows(8, 8);
  rows.setZero();
  const auto e = [&](int row, int i, double v) { rows(row, i) = v; };
  // a4 = e3 - e2
  e(0, 2, 1); e(0, 1, -1);
  // a2 = e1 + e2
  e(1, 0, 1); e(1, 1, 1);
  // a3 = e2 - e1
  e(2, 1, 1); e(2, 0, -1);
  // a5 = e4 - e3
  e(3, 3, 1); e(3, 2, -1);
  // a6 = e5 - e4
  e(4, 4, 1); e(4, 3, -1);
  // a1 = (1, -1, ..., -1, 1) / 2
  for (int i = 0; i < 8; ++i) e(5, i, -0.5);
  e(5, 0, 0.5); e(5, 7, 0.5);
  // a7 = e6 - e5, a8 = e7 - e6
  e(6, 5, 1); e(6, 4, -1);
  e(7, 6, 1); e(7, 5, -1);
  LatticeBasis b(rows.transpose());
  expect_profile(b, 2.0, 240, "E8");
  return {"E8", std::move(b), true};
}

NamedLattice d4_lattice(bool unit_determinant) {
  Matrix rows(4, 4);
  rows << -1, -1, 0, 0,
           1, -1, 0, 0,
           0, 1, -1, 0,
           0, 0, 1, -1;
  LatticeBasis b(rows.transpose());
  expect_profile(b, 2.0, 24, "D4");
  if (!unit_determinant) return {"D4-integral", std::move(b), false};
  return {"D4", b.scaled(std::pow(2.0, -0.25)), false};
}

NamedLattice leech_lattice() {
  const auto rows = golay_rows();
  if (golay_min_weight(rows) != 8) {
    throw Error(ErrorCode::kPreconditionViolated, "Golay generator has the wrong distance");
  }
  constexpr int n = 24;
  std::vector<std::vector<std::int64_t>> gens;
  for (std::uint32_t w : rows) {
    std::vector<std::int64_t> v(n, 0);
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = (w >> i) & 1u ? 2 : 0;
    gens.push_back(v);
  }
  for (int i = 1; i < n; ++i) {
    for (int sign : {1, -1}) {
      std::vector<std::int64_t> v(n, 0);
      v[0] = 4;
      v[static_cast<std::size_t>(i)] = 4 * sign;
      gens.push_back(v);
    }
  }
  std::vector<std::int64_t> odd(n, 1);
  odd[0] = -3;
  gens.push_back(odd);

  const auto h = hnf_mod(gens, n, 8);
  std::int64_t log2_det = 0;
  for (int i = 0; i < n; ++i) {
    std::int64_t p = std::abs(h(i, i));
    while (p > 1 && p % 2 == 0) {
      p /= 2;
      ++log2_det;
    }
    if (p != 1) throw Error(ErrorCode::kPreconditionViolated, "Leech HNF pivot not a power of 2");
  }
  if (log2_det != 36) {
    throw Error(ErrorCode::kPreconditionViolated, "Leech HNF has the wrong determinant");
  }
  const Matrix b = h.cast<double>().transpose() / std::sqrt(8.0);
  return {"Leech", lll_reduce(LatticeBasis(b)), true};
}

NamedLattice named_lattice(const std::string& name) {
  if (name == "E8") return e8_lattice();
  if (name == "D4") return d4_lattice(true);
  if (name == "D4-integral") return d4_lattice(false);
  if (name == "Leech") return leech_lattice();
  if (name.size() >= 2 && (name[0] == 'Z' || name[0] == 'z')) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(name.substr(1), &used);
      if (used == name.size() - 1 && n >= 1 && n <= 64) return zn_lattice(n);
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown lattice '" + name + "'");
}

}  // namespace latgauss

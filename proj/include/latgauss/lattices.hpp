#pragma once

#include <string>

#include "latgauss/basis.hpp"

namespace latgauss {

struct NamedLattice {
  std::string name;
  LatticeBasis basis;
  bool isodual = false;
};

NamedLattice zn_lattice(int n);

// Unimodular even E8: min norm^2 2, 240 minimal vectors.
NamedLattice e8_lattice();

// D4 in integral form (det 2, min norm^2 2, 24 minimal vectors), or scaled by
// 2^{-1/4} to unit determinant.
NamedLattice d4_lattice(bool unit_determinant);

// Leech lattice from the extended Golay code, scaled to det 1, min norm^2 4.
NamedLattice leech_lattice();

// Recognized names: Zn with n a positive integer (e.g. Z2), E8, D4,
// D4-integral, Leech. Throws kInvalidArgument.
NamedLattice named_lattice(const std::string& name);

// Recounts the minimal vectors and returns (min norm^2, count).
struct ShortVectors {
  double min_norm2 = 0.0;
  std::size_t count = 0;
};
ShortVectors short_vector_profile(const LatticeBasis& basis, double expected_norm2);

}  // namespace latgauss

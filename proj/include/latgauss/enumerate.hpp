#pragma once

#include <cstdint>
#include <vector>

#include "latgauss/basis.hpp"

namespace latgauss {

struct EnumerationOptions {
  // Cap on visited search-tree nodes; exceeding it raises
  // kEnumerationBudgetExceeded.
  std::uint64_t node_budget = 100'000'000;
};

struct BallPoint {
  IntVector x;
  double dist2 = 0.0;  // ||Bx - c||^2
};

// Exactly {x in Z^n : ||Bx - c|| <= radius}, by depth-first interval
// enumeration over the triangular system. Output order is the DFS order
// (top coordinate outermost, ascending), which is deterministic.
std::vector<IntVector> enumerate_ball(const LatticeBasis& basis, const Vector& c,
                                      double radius,
                                      const EnumerationOptions& opts = {});

std::vector<BallPoint> enumerate_ball_points(const LatticeBasis& basis,
                                             const Vector& c, double radius,
                                             const EnumerationOptions& opts = {});

// Squared distances of all ball points, in DFS order. The default version
// splits the search tree on the top coordinate and walks the subtrees with
// OpenMP; the output sequence is identical to the serial reference.
std::vector<double> ball_squared_distances(const LatticeBasis& basis,
                                           const Vector& c, double radius,
                                           const EnumerationOptions& opts = {});

namespace reference {
std::vector<double> ball_squared_distances(const LatticeBasis& basis,
                                           const Vector& c, double radius,
                                           const EnumerationOptions& opts = {});
}  // namespace reference

struct CvpResult {
  IntVector x;
  double distance = 0.0;
};

// Global minimizer of ||Bx - c||. The search starts at the Babai radius and
// shrinks as better points appear; equal distances (within 1e-12 relative)
// resolve to the lexicographically smallest x.
CvpResult cvp_exact(const LatticeBasis& basis, const Vector& c,
                    const EnumerationOptions& opts = {});

}  // namespace latgauss

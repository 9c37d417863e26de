#pragma once

#include <cstdint>

#include "latgauss/basis.hpp"

namespace latgauss {

// 1 + 2 sum_{k>=1} exp(-pi tau k^2). Throws kNonPositiveTau.
double jacobi_theta3(double tau);

struct ThetaValue {
  double value = 0.0;
  double tail_bound = 0.0;   // certified bound on the omitted terms
  double radius_used = 0.0;  // enumeration radius of the lattice actually summed
  std::int64_t terms = 0;
  bool via_dual = false;
};

struct ThetaOptions {
  double tol = 1e-12;
  double tau_switch = 0.5;
  std::uint64_t node_budget = 100'000'000;
};

// Theta series sum_{v in L} exp(-pi tau ||v||^2). Below tau_switch the dual
// lattice is summed instead and the result mapped back through Jacobi's
// formula.
ThetaValue theta_lattice(const LatticeBasis& basis, double tau, const ThetaOptions& opts = {});

namespace reference {
ThetaValue theta_lattice(const LatticeBasis& basis, double tau, const ThetaOptions& opts = {});
}  // namespace reference

// Upper bound on sum over lattice points v with a ||v - c||^2 > u_start of
// exp(-a ||v - c||^2), valid for every center c. Uses the count bound
// #{v : ||v - c|| <= r} <= prod_i (2 r / gs_i + 1) on unit-width shells in
// a ||v - c||^2, closed by a geometric remainder.
double gaussian_shell_tail_bound(const Vector& gs_norms, double a, double u_start);

}  // namespace latgauss

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "latgauss/chain.hpp"
#include "latgauss/klein.hpp"

namespace latgauss {

// All x with ||x||_inf <= K, in lexicographic order, with the target
// normalized over the box.
struct TruncatedSpace {
  LatticeBasis basis;
  GaussianParams params;
  int box_radius = 0;
  std::vector<IntVector> states;
  Vector log_pi_unnorm;  // -||Bx - c||^2 / (2 sigma^2)
  Vector pi;
  double log_mass = 0.0;         // log of the in-box unnormalized mass
  double tail_mass_bound = 0.0;  // out-of-box mass relative to in-box mass
  double pi_min = 0.0;

  std::size_t size() const { return states.size(); }
  // Canonical index of x, or nullopt outside the box.
  std::optional<std::size_t> index_of(const IntVector& x) const;
};

struct SpaceOptions {
  std::uint64_t max_states = 1'000'000;
  double max_tail = 1e-9;
};

// Throws kSpaceTooLarge or kTailNotNegligible.
TruncatedSpace build_space(const LatticeBasis& basis, const GaussianParams& params, int box_radius,
                           const SpaceOptions& opts = {});

struct TransitionMatrix {
  Matrix p;
  ChainKind kind = ChainKind::kMhk;
  // Proposal mass from each state that lands outside the box; it is kept on
  // the diagonal.
  Vector leaked;
};

// log P_Klein(x) at every state (normalized over Z^n, not over the box).
Vector klein_log_law(const TruncatedSpace& space);

// min_x q(x) / pi(x) over the box.
double box_delta(const TruncatedSpace& space);

TransitionMatrix exact_mhk_matrix(const TruncatedSpace& space);
TransitionMatrix exact_smk_matrix(const TruncatedSpace& space,
                                  std::optional<double> proposal_sigma = std::nullopt);

namespace reference {
TransitionMatrix exact_mhk_matrix(const TruncatedSpace& space);
TransitionMatrix exact_smk_matrix(const TruncatedSpace& space,
                                  std::optional<double> proposal_sigma = std::nullopt);
}  // namespace reference

// Independent-chain diagonal in the closed form
//   q(x) + sum_{y != x} max(0, q(y) - pi(y) q(x) / pi(x))
// with y restricted to the box.
Vector mhk_closed_form_diagonal(const TruncatedSpace& space);

// Adds eps to P(i, j) and rescales row i back to unit sum.
void inject_fault(TransitionMatrix& tm, std::size_t i, std::size_t j, double eps);

// (1/2) sum |p_i - q_i|. Throws kDimensionMismatch / kNotNormalized.
double tv_distance(const Vector& p, const Vector& q);

// TV(e_{x0} P^t, pi) for t = 1..T. Throws kStateOutsideBox.
std::vector<double> tv_decay_curve(const TransitionMatrix& tm, const TruncatedSpace& space,
                                   const IntVector& x0, int steps);

// Worst start state: max_x TV(e_x P^t, pi) for t = 1..T.
std::vector<double> worst_case_tv_curve(const TransitionMatrix& tm, const TruncatedSpace& space,
                                        int steps);

struct SpectralInfo {
  double gap = 0.0;           // 1 - |lambda_1|, lambda_1 the second largest eigenvalue
  double absolute_gap = 0.0;  // 1 - max(|lambda_1|, |lambda_min|)
  double lambda1 = 0.0;
  double lambda_min = 0.0;
};

// Throws kNotReversible when the detailed-balance violation exceeds 1e-10.
SpectralInfo spectral_analysis(const TransitionMatrix& tm, const TruncatedSpace& space);
double spectral_gap_exact(const TransitionMatrix& tm, const TruncatedSpace& space);

// Exact min over nonempty S with pi(S) <= 1/2 of Q(S, S^c) / pi(S).
// Throws kSpaceTooLargeForExhaustive above 20 states.
double conductance(const TransitionMatrix& tm, const TruncatedSpace& space);

// Best sweep cut along the Fiedler vector and along the pi ordering. Any cut
// is feasible, so this is an upper bound on the conductance, not its value.
double conductance_sweep_upper_bound(const TransitionMatrix& tm, const TruncatedSpace& space);

struct DriftEstimate {
  double lambda_hat = 0.0;
  double b_hat = 0.0;
  double d = 0.0;
  std::size_t c_size = 0;
};

// V = pi^{-1/2}, C = {pi >= 1/d^2}. lambda_hat = max_{x not in C} (PV)(x)/V(x),
// b_hat = max(0, max_{x in C} (PV)(x) - lambda_hat V(x)).
DriftEstimate estimate_drift(const TransitionMatrix& tm, const TruncatedSpace& space, double d);

// max |pi(x) P(x,y) - pi(y) P(y,x)|.
double detailed_balance_check(const TransitionMatrix& tm, const TruncatedSpace& space);

// ||pi P - pi||_inf.
double stationarity_residual(const TransitionMatrix& tm, const TruncatedSpace& space);

// Largest |row sum - 1|.
double row_sum_error(const TransitionMatrix& tm);

struct EmpiricalDistribution {
  Vector p;  // normalized over in-box samples
  std::int64_t in_box = 0;
  std::int64_t overflow = 0;
  double overflow_fraction = 0.0;
};

EmpiricalDistribution empirical_distribution(const std::vector<IntVector>& samples,
                                             const TruncatedSpace& space);

}  // namespace latgauss

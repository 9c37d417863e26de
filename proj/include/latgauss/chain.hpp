#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "latgauss/klein.hpp"

namespace latgauss {

enum class ChainKind { kMhk, kSmk };

const char* to_string(ChainKind kind);

struct ChainState {
  IntVector x;
  double log_target_unnorm = 0.0;
  // Klein normalizer at x; only maintained by the independent chain.
  double klein_log_normalizer = 0.0;
  std::int64_t step = 0;
  std::int64_t accepts = 0;
};

// Holds the sampler pieces for one (basis, target) pair.
class MarkovChain {
 public:
  // proposal_sigma only affects the symmetric chain; it defaults to sigma.
  MarkovChain(ChainKind kind, const LatticeBasis& basis, GaussianParams params,
              std::optional<double> proposal_sigma = std::nullopt);

  ChainKind kind() const { return kind_; }
  const KleinSampler& klein() const { return klein_; }

  ChainState init(const IntVector& x0) const;

  // One Metropolis-Hastings transition. Returns the acceptance probability.
  double step(ChainState& state, RngStream& rng) const;

 private:
  double mhk_step(ChainState& state, RngStream& rng) const;
  double smk_step(ChainState& state, RngStream& rng) const;

  ChainKind kind_;
  KleinSampler klein_;
  SymmetricKleinProposal smk_proposal_;
};

struct ChainOptions {
  std::int64_t burn_in = 0;
  std::int64_t n_samples = 1;
  std::int64_t thinning = 1;
  std::optional<IntVector> x0;  // defaults to the Babai point of the center
  std::optional<double> proposal_sigma;
  bool record_timing = false;
};

struct ChainDiagnostics {
  IntVector x0;
  std::int64_t steps = 0;
  std::int64_t accepts = 0;
  double acceptance_rate = 0.0;
  IntVector best_x;
  double best_distance = 0.0;
  double seconds_per_step = 0.0;  // zero unless timing was requested
};

struct ChainRun {
  std::vector<IntVector> samples;
  ChainDiagnostics diagnostics;
};

ChainRun run_chain(ChainKind kind, const LatticeBasis& basis, const GaussianParams& params,
                   const ChainOptions& options, RngStream& rng);

// Independent chains, chain i driven by RngStream(seed, i).
std::vector<ChainRun> run_chains(ChainKind kind, const LatticeBasis& basis,
                                 const GaussianParams& params, const ChainOptions& options,
                                 std::uint64_t seed, int n_chains);

namespace reference {
std::vector<ChainRun> run_chains(ChainKind kind, const LatticeBasis& basis,
                                 const GaussianParams& params, const ChainOptions& options,
                                 std::uint64_t seed, int n_chains);
}  // namespace reference

}  // namespace latgauss

#include "latgauss/chain.hpp"

#include <chrono>
#include <cmath>
#include <exception>

#include "latgauss/error.hpp"

namespace latgauss {

const char* to_string(ChainKind kind) { return kind == ChainKind::kMhk ? "mhk" : "smk"; }

MarkovChain::MarkovChain(ChainKind kind, const LatticeBasis& basis, GaussianParams params,
                         std::optional<double> proposal_sigma)
    : kind_(kind),
      klein_(basis, std::move(params)),
      smk_proposal_(basis, proposal_sigma.value_or(klein_.params().sigma)) {}

ChainState MarkovChain::init(const IntVector& x0) const {
  ChainState s;
  s.x = x0;
  s.log_target_unnorm = klein_.log_target_unnorm(x0);
  if (kind_ == ChainKind::kMhk) s.klein_log_normalizer = klein_.log_normalizer(x0);
  return s;
}

double MarkovChain::step(ChainState& state, RngStream& rng) const {
  return kind_ == ChainKind::kMhk ? mhk_step(state, rng) : smk_step(state, rng);
}

double MarkovChain::mhk_step(ChainState& state, RngStream& rng) const {
  const KleinDraw y = klein_.draw(rng);
  const double log_ratio = y.log_normalizer - state.klein_log_normalizer;
  const double alpha = log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);
  const double u = rng.uniform01();
  ++state.step;
  if (u < alpha) {
    state.x = y.x;
    state.klein_log_normalizer = y.log_normalizer;
    state.log_target_unnorm = klein_.log_target_unnorm(state.x);
    ++state.accepts;
  }
  return alpha;
}

double MarkovChain::smk_step(ChainState& state, RngStream& rng) const {
  const KleinDraw y = smk_proposal_.draw(state.x, rng);
  const double log_target_y = klein_.log_target_unnorm(y.x);
  const double log_ratio = log_target_y - state.log_target_unnorm;
  const double alpha = log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);
  const double u = rng.uniform01();
  ++state.step;
  if (u < alpha) {
    state.x = y.x;
    state.log_target_unnorm = log_target_y;
    ++state.accepts;
  }
  return alpha;
}

ChainRun run_chain(ChainKind kind, const LatticeBasis& basis, const GaussianParams& params,
                   const ChainOptions& options, RngStream& rng) {
  if (options.burn_in < 0 || options.n_samples < 1 || options.thinning < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "need burn_in >= 0, n_samples >= 1, thinning >= 1");
  }
  const MarkovChain chain(kind, basis, params, options.proposal_sigma);
  const IntVector x0 = options.x0 ? *options.x0 : babai_nearest_plane(basis, params.center);
  ChainState state = chain.init(x0);

  ChainRun run;
  run.diagnostics.x0 = x0;
  run.diagnostics.best_x = x0;
  double best_d2 = -2.0 * params.sigma * params.sigma * state.log_target_unnorm;
  auto track_best = [&] {
    const double d2 = -2.0 * params.sigma * params.sigma * state.log_target_unnorm;
    if (d2 < best_d2) {
      best_d2 = d2;
      run.diagnostics.best_x = state.x;
    }
  };

  const auto start = std::chrono::steady_clock::now();
  for (std::int64_t t = 0; t < options.burn_in; ++t) {
    chain.step(state, rng);
    track_best();
  }
  run.samples.reserve(static_cast<std::size_t>(options.n_samples));
  for (std::int64_t k = 0; k < options.n_samples; ++k) {
    for (std::int64_t t = 0; t < options.thinning; ++t) {
      chain.step(state, rng);
      track_best();
    }
    run.samples.push_back(state.x);
  }
  const auto stop = std::chrono::steady_clock::now();

  ChainDiagnostics& d = run.diagnostics;
  d.steps = state.step;
  d.accepts = state.accepts;
  d.acceptance_rate = static_cast<double>(state.accepts) / static_cast<double>(state.step);
  d.best_distance = (basis.point(d.best_x) - params.center).norm();
  if (options.record_timing) {
    d.seconds_per_step =
        std::chrono::duration<double>(stop - start).count() / static_cast<double>(state.step);
  }
  return run;
}

std::vector<ChainRun> run_chains(ChainKind kind, const LatticeBasis& basis,
                                 const GaussianParams& params, const ChainOptions& options,
                                 std::uint64_t seed, int n_chains) {
  std::vector<ChainRun> runs(static_cast<std::size_t>(n_chains));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < n_chains; ++i) {
    try {
      RngStream rng(seed, static_cast<std::uint64_t>(i));
      runs[static_cast<std::size_t>(i)] = run_chain(kind, basis, params, options, rng);
    } catch (...) {
#pragma omp critical(latgauss_chain_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return runs;
}

namespace reference {

std::vector<ChainRun> run_chains(ChainKind kind, const LatticeBasis& basis,
                                 const GaussianParams& params, const ChainOptions& options,
                                 std::uint64_t seed, int n_chains) {
  std::vector<ChainRun> runs;
  runs.reserve(static_cast<std::size_t>(n_chains));
  for (int i = 0; i < n_chains; ++i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    runs.push_back(run_chain(kind, basis, params, options, rng));
  }
  return runs;
}

}  // namespace reference
}  // namespace latgauss

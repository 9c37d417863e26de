// Serial reference vs OpenMP kernels. Each pair runs the same inputs; the
// parallel results are checked bitwise against the reference before timing.

#include <benchmark/benchmark.h>

#include <random>

#include "latgauss/chain.hpp"
#include "latgauss/enumerate.hpp"
#include "latgauss/lattices.hpp"
#include "latgauss/oracle.hpp"
#include "latgauss/theta.hpp"

namespace {

using namespace latgauss;

const LatticeBasis& e8() {
  static const LatticeBasis b = e8_lattice().basis;
  return b;
}

const TruncatedSpace& space2d() {
  static const TruncatedSpace s = [] {
    Matrix m(2, 2);
    m << 1.0, 0.4, 0.0, 0.55;
    return build_space(LatticeBasis(m), {0.4, Vector::Zero(2)}, 12);
  }();
  return s;
}

void BM_ThetaSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(reference::theta_lattice(e8(), 0.6).value);
}
void BM_ThetaParallel(benchmark::State& st) {
  if (theta_lattice(e8(), 0.6).value != reference::theta_lattice(e8(), 0.6).value) st.SkipWithError("mismatch");
  for (auto _ : st) benchmark::DoNotOptimize(theta_lattice(e8(), 0.6).value);
}

void BM_BallSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(reference::ball_squared_distances(e8(), Vector::Zero(8), 2.5).size());
}
void BM_BallParallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(ball_squared_distances(e8(), Vector::Zero(8), 2.5).size());
}

void BM_MhkMatrixSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(reference::exact_mhk_matrix(space2d()).p.sum());
}
void BM_MhkMatrixParallel(benchmark::State& st) {
  if (exact_mhk_matrix(space2d()).p != reference::exact_mhk_matrix(space2d()).p) st.SkipWithError("mismatch");
  for (auto _ : st) benchmark::DoNotOptimize(exact_mhk_matrix(space2d()).p.sum());
}

void BM_SmkMatrixSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(reference::exact_smk_matrix(space2d()).p.sum());
}
void BM_SmkMatrixParallel(benchmark::State& st) {
  if (exact_smk_matrix(space2d()).p != reference::exact_smk_matrix(space2d()).p) st.SkipWithError("mismatch");
  for (auto _ : st) benchmark::DoNotOptimize(exact_smk_matrix(space2d()).p.sum());
}

ChainOptions chain_options() {
  ChainOptions o;
  o.burn_in = 100;
  o.n_samples = 5000;
  return o;
}

void BM_ChainsSerial(benchmark::State& st) {
  const GaussianParams p{0.6, Vector::Zero(8)};
  for (auto _ : st)
    benchmark::DoNotOptimize(reference::run_chains(ChainKind::kSmk, e8(), p, chain_options(), 1, 8).size());
}
void BM_ChainsParallel(benchmark::State& st) {
  const GaussianParams p{0.6, Vector::Zero(8)};
  for (auto _ : st) benchmark::DoNotOptimize(run_chains(ChainKind::kSmk, e8(), p, chain_options(), 1, 8).size());
}

}  // namespace

BENCHMARK(BM_ThetaSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ThetaParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BallSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BallParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MhkMatrixSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MhkMatrixParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SmkMatrixSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SmkMatrixParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ChainsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ChainsParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

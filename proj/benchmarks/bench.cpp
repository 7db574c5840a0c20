#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "cascade/dynamics.hpp"
#include "cascade/entanglement.hpp"
#include "cascade/qmath.hpp"
#include "cascade/tomography.hpp"

using namespace cascade;

namespace {

const SystemParams kPure{3.0, 6.0, 0.0, 0.0, 6.0, 1.0};

Eigen::Matrix3cd ground() {
  Eigen::Matrix3cd rho = Eigen::Matrix3cd::Zero();
  rho(0, 0) = 1.0;
  return rho;
}

void BM_lindblad_rhs(benchmark::State& state) {
  Eigen::Matrix3cd rho = steady_state(kPure).rho;
  for (auto _ : state) benchmark::DoNotOptimize(lindblad_rhs(kPure, rho));
}
BENCHMARK(BM_lindblad_rhs);

void BM_evolve_unit_time(benchmark::State& state) {
  EvolveOptions opts;
  opts.t_max = 1.0;
  opts.sample_every = 1 << 28;
  for (auto _ : state) benchmark::DoNotOptimize(evolve(kPure, ground(), opts));
}
BENCHMARK(BM_evolve_unit_time);

void BM_steady_state(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(steady_state(kPure));
}
BENCHMARK(BM_steady_state);

void BM_nullspace_steady(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(steady_state_nullspace(kPure));
}
BENCHMARK(BM_nullspace_steady);

void BM_invariants(benchmark::State& state) {
  Eigen::Matrix4cd photon = atomic_to_photon(steady_state(kPure).rho);
  for (auto _ : state) benchmark::DoNotOptimize(invariants_from_state(photon));
}
BENCHMARK(BM_invariants);

void BM_pdf_rho2(benchmark::State& state) {
  const int bins = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(pdf_rho2(0.6, 0.48, 0.64, bins));
}
BENCHMARK(BM_pdf_rho2)->Arg(400)->Arg(2001);

void BM_mc_oracle(benchmark::State& state) {
  Eigen::Vector4cd e0 = Eigen::Vector4cd::Zero(), v = Eigen::Vector4cd::Zero();
  e0(0) = 1.0;
  v(1) = 0.6;
  v(2) = 0.48;
  v(3) = 0.64;
  for (auto _ : state)
    benchmark::DoNotOptimize(mc_pdf_oracle({e0, v}, state.range(0), 42, 401));
}
BENCHMARK(BM_mc_oracle)->Arg(10000)->Arg(100000);

} // namespace

BENCHMARK_MAIN();

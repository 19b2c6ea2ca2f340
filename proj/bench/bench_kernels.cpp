// Serial reference vs OpenMP for each kernel. Thread count follows
// FKS_NUM_THREADS (or OMP_NUM_THREADS).

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "fks/exec.hpp"
#include "fks/kernels.hpp"

namespace {

using fks::kernels::Exec;

std::vector<double> noise(std::size_t n, double lo, double hi, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

Exec mode(const benchmark::State& s) { return s.range(1) == 0 ? Exec::serial : Exec::parallel; }

void label(benchmark::State& s) { s.SetLabel(s.range(1) == 0 ? "serial" : "openmp"); }

void BM_RlL1(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto f = noise(n, -1.0, 1.0, 1);
  std::vector<double> out(n);
  for (auto _ : state) {
    fks::kernels::rl_l1(f, 1.0 / 1024.0, 0.3, 1.1, out, mode(state));
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(state.range(0));
  label(state);
}

void BM_Derivatives(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto f = noise(n, -1.0, 1.0, 2);
  std::vector<double> d1(n), d2(n);
  for (auto _ : state) {
    fks::kernels::derivatives(f, 0.01, d1, d2, mode(state));
    benchmark::DoNotOptimize(d2.data());
  }
  label(state);
}

void BM_Correlation(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto dens = noise(n, 1e-6, 1.0, 3), a = noise(n, -1.0, 1.0, 4), b = noise(n, -1.0, 1.0, 5);
  const fks::kernels::CorrelationInputs in{dens, a, b, a, b, a, b};
  const fks::kernels::FracCorrelationCoeffs c{0.3, 0.897, 1.05, fks::PowerBranchMode::signed_power};
  std::vector<double> out(n);
  for (auto _ : state) {
    fks::kernels::exact_correlation(in, 1e-8, out, mode(state));
    fks::kernels::frac_correlation(in, c, 1e-8, out, mode(state));
    benchmark::DoNotOptimize(out.data());
  }
  label(state);
}

BENCHMARK(BM_RlL1)->ArgsProduct({{2049, 8193, 32769}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Derivatives)->ArgsProduct({{801, 1601, 1 << 20}, {0, 1}});
BENCHMARK(BM_Correlation)->ArgsProduct({{801, 1601, 1 << 20}, {0, 1}});

}  // namespace

int main(int argc, char** argv) {
  fks::kernels::configure_threads();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}

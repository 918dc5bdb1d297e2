#include <benchmark/benchmark.h>

#include <complex>
#include <filesystem>

#include "omegax/arithmetic.hpp"
#include "omegax/explicit_formula.hpp"
#include "omegax/zeros.hpp"
#include "omegax/zeta.hpp"

namespace {

const omegax::ZeroTable& table() {
  static const omegax::ZeroTable t = omegax::load_zeros(
      std::filesystem::path(OMEGAX_DATA_DIR) / "zeros100.txt");
  return t;
}

void BM_SieveSegment(benchmark::State& state) {
  const std::uint64_t lo = 1'000'000'001ull;
  const std::uint64_t hi = lo + (std::uint64_t{1} << 20) - 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(omegax::sieve_segment(lo, hi));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(hi - lo + 1));
}
BENCHMARK(BM_SieveSegment)->Unit(benchmark::kMillisecond);

void BM_SummatoryExact(benchmark::State& state) {
  const auto x = static_cast<std::uint64_t>(state.range(0));
  const auto threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        omegax::summatory_exact(x, omegax::kDefaultSegmentSize, threads));
  }
}
BENCHMARK(BM_SummatoryExact)
    ->Args({10'000'000, 1})
    ->Args({10'000'000, 4})
    ->Unit(benchmark::kMillisecond);

void BM_SummatoryFast(benchmark::State& state) {
  const auto x = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(omegax::summatory_fast(x));
  }
}
BENCHMARK(BM_SummatoryFast)
    ->Arg(10'000'000)
    ->Arg(1'000'000'000)
    ->Unit(benchmark::kMicrosecond);

void BM_Zeta(benchmark::State& state) {
  const std::complex<double> s(0.5, static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(omegax::zeta(s));
  }
}
BENCHMARK(BM_Zeta)->Arg(30)->Arg(200)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_BigF(benchmark::State& state) {
  const std::complex<double> s(1.3, 150.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(omegax::big_f(s));
  }
}
BENCHMARK(BM_BigF)->Unit(benchmark::kMicrosecond);

void BM_ConditionalFormula(benchmark::State& state) {
  const omegax::ZeroTable& t = table();
  for (auto _ : state) {
    benchmark::DoNotOptimize(omegax::conditional_formula(1e6, t));
  }
}
BENCHMARK(BM_ConditionalFormula)->Unit(benchmark::kMillisecond);

void BM_HardyZ(benchmark::State& state) {
  double t = 100.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(omegax::hardy_z(t));
    t += 1e-9;  // defeat value caching without changing the cost profile
  }
}
BENCHMARK(BM_HardyZ)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();

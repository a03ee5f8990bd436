#include <benchmark/benchmark.h>

#include <random>

#include "sympf/invariants.hpp"
#include "sympf/orbit4.hpp"
#include "sympf/symplectic.hpp"

using namespace sympf;

namespace {

SkewMatrix<Rational> random_rational_skew(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SkewMatrix<Rational> m(n);
  for (int i = 0; i < 2 * n; ++i)
    for (int j = i + 1; j < 2 * n; ++j) {
      Rational q(static_cast<long>(rng() % 19) - 9, static_cast<long>(rng() % 4) + 1);
      q.canonicalize();
      m.set(i, j, q);
    }
  return m;
}

SkewMatrix<double> random_double_skew(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SkewMatrix<double> m(n);
  for (int i = 0; i < 2 * n; ++i)
    for (int j = i + 1; j < 2 * n; ++j)
      m.set(i, j, -5.0 + 10.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53);
  return m;
}

void PfaffianEliminationRational(benchmark::State& state) {
  const auto m = random_rational_skew(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(pfaffian(m));
}
BENCHMARK(PfaffianEliminationRational)->DenseRange(1, 6);

void PfaffianEliminationDouble(benchmark::State& state) {
  const auto m = random_double_skew(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(pfaffian(m));
}
BENCHMARK(PfaffianEliminationDouble)->DenseRange(1, 6);

void PfaffianMatchingSum(benchmark::State& state) {
  const auto m = random_rational_skew(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(pfaffian_oracle(m));
}
BENCHMARK(PfaffianMatchingSum)->DenseRange(1, 6);

void InvariantVectorRational(benchmark::State& state) {
  const auto m = random_rational_skew(static_cast<int>(state.range(0)), 11);
  for (auto _ : state) benchmark::DoNotOptimize(invariants(m));
}
BENCHMARK(InvariantVectorRational)->DenseRange(1, 4);

void RandomGroupElement(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(random_symplectic<Rational>(2, ++seed, static_cast<int>(state.range(0))));
}
BENCHMARK(RandomGroupElement)->Arg(4)->Arg(8)->Arg(16);

void WitnessRoundTrip(benchmark::State& state) {
  const auto a = random_rational_skew(2, 13);
  const auto p = random_symplectic<Rational>(2, 5, 6);
  const auto b = act(p, a);
  for (auto _ : state) benchmark::DoNotOptimize(witness(a, b));
}
BENCHMARK(WitnessRoundTrip);

}  // namespace

BENCHMARK_MAIN();

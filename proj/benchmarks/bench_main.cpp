#include <benchmark/benchmark.h>

#include "holo/capacity.hpp"
#include "holo/dioph.hpp"
#include "holo/hyperpade.hpp"
#include "holo/padiczeta.hpp"
#include "holo/series.hpp"

namespace {

using namespace holo;

void BM_SeriesReversion(benchmark::State& state) {
  const auto order = static_cast<std::size_t>(state.range(0));
  const auto x = padiczeta::hauptmodul(order).coefficients;
  for (auto _ : state) benchmark::DoNotOptimize(series::reversion(x));
}
BENCHMARK(BM_SeriesReversion)->Arg(20)->Arg(40)->Arg(80);

void BM_SeriesPower(benchmark::State& state) {
  const auto order = static_cast<std::size_t>(state.range(0));
  const auto a = series::binomial_series(series::Rational(1, 3), order);
  for (auto _ : state) benchmark::DoNotOptimize(series::power(a, series::Rational(2, 5)));
}
BENCHMARK(BM_SeriesPower)->Arg(20)->Arg(40)->Arg(80);

void BM_DihedralGenerators(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(hyperpade::dihedral_generators(series::Rational(1, 3), series::Rational(2, 7),
                                                            static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_DihedralGenerators)->Arg(10)->Arg(20);

void BM_BostCharlesPhi(benchmark::State& state) {
  const auto map = confmaps::AnalyticMap::phi({-0.5, 0.0}, {0.5, 0.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(capacity::bost_charles_integral(map, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_BostCharlesPhi)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_BostCharlesCircle(benchmark::State& state) {
  const auto map = confmaps::AnalyticMap::mobius_circle_x();
  for (auto _ : state) {
    benchmark::DoNotOptimize(capacity::bost_charles_integral(map, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_BostCharlesCircle)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_Zeta5RouteA(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(padiczeta::zeta2_route_a(2, state.range(0)));
}
BENCHMARK(BM_Zeta5RouteA)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_Zeta5RouteB(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(padiczeta::zeta2_route_b(2, state.range(0)));
}
BENCHMARK(BM_Zeta5RouteB)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_DirichletRound(benchmark::State& state) {
  const std::vector<series::Integer> n = {123456789, -987654321, 55555};
  const auto Q = static_cast<unsigned long>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dioph::dirichlet_round(n, Q, 1));
}
BENCHMARK(BM_DirichletRound)->Arg(4)->Arg(8)->Arg(12);

}  // namespace

BENCHMARK_MAIN();

#include <random>

#include <benchmark/benchmark.h>

#include "flagctrl/flag_calculus.hpp"
#include "flagctrl/sl/control.hpp"
#include "flagctrl/sl/iwasawa.hpp"

using namespace flagctrl;

namespace {

void BM_WeylGenerate(benchmark::State& state, Family f, int rank) {
  const auto rs = RootSystem::build(f, rank);
  for (auto _ : state) benchmark::DoNotOptimize(WeylGroup::generate(rs).order());
}
BENCHMARK_CAPTURE(BM_WeylGenerate, A3, Family::A, 3);
BENCHMARK_CAPTURE(BM_WeylGenerate, B4, Family::B, 4);
BENCHMARK_CAPTURE(BM_WeylGenerate, F4, Family::F, 4);
BENCHMARK_CAPTURE(BM_WeylGenerate, E6, Family::E, 6)->Unit(benchmark::kMillisecond);

void BM_DoubleCosets(benchmark::State& state) {
  const auto w = WeylGroup::generate(RootSystem::build(Family::B, 4));
  const auto left = SimpleRootSet::of({0, 2});
  const auto right = SimpleRootSet::of({1, 3});
  for (auto _ : state) benchmark::DoNotOptimize(w.double_cosets(left, right).size());
}
BENCHMARK(BM_DoubleCosets);

void BM_EnumerateChainControlSets(benchmark::State& state) {
  const auto w = WeylGroup::generate(RootSystem::build(Family::A, 4));
  const FlagSpec spec{SimpleRootSet::of({1, 2, 3}), SimpleRootSet::of({0})};
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_chain_control_sets(w, spec).size());
}
BENCHMARK(BM_EnumerateChainControlSets);

void BM_Iwasawa(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n01;
  sl::Matrix g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g(i, j) = n01(rng);
  }
  if (g.determinant() < 0) g.row(0) *= -1.0;
  g /= std::pow(g.determinant(), 1.0 / d);
  for (auto _ : state) benchmark::DoNotOptimize(sl::iwasawa(g).a.sum());
}
BENCHMARK(BM_Iwasawa)->Arg(3)->Arg(6)->Arg(10);

void BM_IntegrateUnitTime(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  sl::Matrix x = sl::Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) x(i, (i + 1) % d) = 0.3 * (i + 1);
  x.diagonal().setLinSpaced(d, 1.0, -1.0);
  const auto spec = sl::ControlSystemSpec::autonomous(x, 1e-3);
  const auto u = sl::ControlSignal::constant(sl::Vector(0));
  for (auto _ : state) benchmark::DoNotOptimize(sl::integrate(spec, u, 1.0).final_state()(0, 0));
}
BENCHMARK(BM_IntegrateUnitTime)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

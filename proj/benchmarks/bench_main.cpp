#include <benchmark/benchmark.h>

#include <cmath>

#include "driftkit/hspec.hpp"
#include "driftkit/montecarlo.hpp"
#include "driftkit/oracle.hpp"
#include "driftkit/potential.hpp"
#include "driftkit/processes.hpp"
#include "driftkit/rng.hpp"

namespace dk = driftkit;

static void BM_OneMaxChainBuild(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dk::build_onemax_chain(n));
}
BENCHMARK(BM_OneMaxChainBuild)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_BackSubstitution(benchmark::State& state) {
  const auto chain = dk::build_onemax_chain(static_cast<int>(state.range(0)));
  const auto start = dk::binomial_start(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dk::exact_expectation(chain, start, dk::SolveMethod::BackSubstitution));
}
BENCHMARK(BM_BackSubstitution)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_DenseSolve(benchmark::State& state) {
  const auto chain = dk::random_absorbing_chain(3, static_cast<std::size_t>(state.range(0)), dk::ChainFamily::General);
  for (auto _ : state) benchmark::DoNotOptimize(dk::expected_hitting_times(chain, dk::SolveMethod::Dense));
}
BENCHMARK(BM_DenseSolve)->Arg(40)->Arg(400);

static void BM_ExactTail(benchmark::State& state) {
  const auto chain = dk::build_onemax_chain(100);
  const auto start = dk::binomial_start(100);
  for (auto _ : state) benchmark::DoNotOptimize(dk::exact_tail(chain, start, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_ExactTail)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_OneMaxSteps(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  dk::Simulator sim(dk::ProcessSpec::onemax(n));
  dk::Rng rng(1);
  auto s = sim.initial_state(rng);
  for (auto _ : state) {
    if (sim.at_target(s)) s = sim.initial_state(rng);
    sim.step(s, rng);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_OneMaxSteps)->Arg(100)->Arg(10000);

static void BM_OneMaxTrials(benchmark::State& state) {
  dk::TrialOptions o;
  o.trials = 1000;
  o.workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dk::run_trials(dk::ProcessSpec::onemax(100), o));
}
BENCHMARK(BM_OneMaxTrials)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_QuadraturePotential(benchmark::State& state) {
  const auto h = dk::HSpec::expression(dk::Expr::parse("exp(-1+x/n)*x/n*(1-1/n)"), 100, 1, 100);
  for (auto _ : state) benchmark::DoNotOptimize(dk::integrate_reciprocal(h, 1, 100));
}
BENCHMARK(BM_QuadraturePotential);

static void BM_TablePotential(benchmark::State& state) {
  std::map<long, double> t;
  for (long x = 1; x <= 1000; ++x) t[x] = dk::onemax_drift_bounds(1000, static_cast<int>(x)).lower;
  const dk::PotentialFunction g(dk::HSpec::table(t, 1, 1000));
  double x = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(g(x));
    x = x >= 999.0 ? 1.0 : x + 1.37;
  }
}
BENCHMARK(BM_TablePotential);
BENCHMARK_MAIN();

// Serial reference vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include "qumpi/fock.hpp"
#include "qumpi/observables.hpp"
#include "qumpi/sweep.hpp"

using namespace qumpi;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

CircuitConfig operatingPoint() {
  CircuitConfig c;
  c.jpa1 = {7.73, 0.0, 0.238, 1.0};
  c.jpa2 = {7.73, kPi / 2, 0.238, 1.0};
  c.input1 = InputSpec::coherent(0.83, 0.64 * kPi);
  c.input2 = InputSpec::coherent(0.83, 0.0);
  return c;
}

void BM_IpGrid(benchmark::State& state) {
  const QfiForm form(runQumpi(operatingPoint()), 0);
  const IpOptions opts;
  for (auto _ : state) benchmark::DoNotOptimize(ipGridValues(form, opts, mode(state)));
}

void BM_Sweep(benchmark::State& state) {
  SweepOptions opts;
  opts.execution = mode(state);
  const std::vector<AxisSpec> axes{{"theta2", 0, 2 * kPi, 16}, {"gamma1", 0, 2 * kPi, 16}};
  for (auto _ : state) benchmark::DoNotOptimize(sweep(operatingPoint(), axes, opts));
}

void BM_KrausChannel(benchmark::State& state) {
  FockOptions fo;
  fo.cutoff = static_cast<int>(state.range(1));
  const FockDensity base = buildFock(Netlist{{CoherentMode{0.6}, ThermalMode{0.2}}, {HybridOp{0, 1}}}, fo);
  const auto kraus = attenuatorKraus(fo.cutoff, 0.8, 0.05);
  for (auto _ : state) {
    FockDensity s = base;
    applyKrausChannel(s, 1, kraus, mode(state));
    benchmark::DoNotOptimize(s.rho().data());
  }
}

}  // namespace

BENCHMARK(BM_IpGrid)->Arg(0)->Arg(1)->ArgName("parallel");
BENCHMARK(BM_Sweep)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KrausChannel)->Args({0, 20})->Args({1, 20})->Args({0, 40})->Args({1, 40})
    ->ArgNames({"parallel", "cutoff"})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

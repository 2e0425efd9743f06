#include <benchmark/benchmark.h>

#include <numbers>

#include "nlsw/coefficients.hpp"
#include "nlsw/oracle.hpp"
#include "nlsw/stepper.hpp"
#include "nlsw/study.hpp"

using namespace nlsw;

namespace {

constexpr double pi = std::numbers::pi;

ModelParams bench_params() {
  ModelParams p;
  p.alpha = 1.0;
  p.eps = 1.0;
  p.p = 1;
  return p;
}

std::vector<cplx> wave(const GridSpec& g) {
  std::vector<cplx> v(static_cast<size_t>(g.size()));
  for (int j = 0; j < g.size(); ++j)
    v[static_cast<size_t>(j)] = default_initial_wave(g.node(j));
  return v;
}

std::vector<cplx> velocity(const GridSpec& g) {
  std::vector<cplx> v(static_cast<size_t>(g.size()));
  for (int j = 0; j < g.size(); ++j)
    v[static_cast<size_t>(j)] = default_initial_velocity(g.node(j));
  return v;
}

}  // namespace

static void BM_DftRoundTrip(benchmark::State& state) {
  GridSpec g = make_grid(-pi, pi, static_cast<int>(state.range(0)));
  auto samples = wave(g);
  for (auto _ : state) {
    auto back = inverse_dft(forward_dft(g, samples));
    benchmark::DoNotOptimize(back.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DftRoundTrip)->Arg(64)->Arg(128)->Arg(256);

static void BM_BuildTable(benchmark::State& state) {
  GridSpec g = make_grid(-pi, pi, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    CoefficientTable t = build_table(g, 1.0, 1.0, 1, 1e-3);
    benchmark::DoNotOptimize(&t);
  }
}
BENCHMARK(BM_BuildTable)->Arg(128)->Arg(1024);

static void BM_Step(benchmark::State& state) {
  GridSpec g = make_grid(-pi, pi, static_cast<int>(state.range(0)));
  ModelParams params = bench_params();
  const double tau = 1e-3;
  auto table = cached_table(g, params.alpha, params.eps, params.p, tau);
  StepperState s = first_step(g, params, *table, wave(g), velocity(g), tau);
  for (auto _ : state) {
    s = step(std::move(s), *table);
    benchmark::DoNotOptimize(&s);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Step)->Arg(64)->Arg(128)->Arg(256);

static void BM_Rk4Step(benchmark::State& state) {
  GridSpec g = make_grid(-pi, pi, static_cast<int>(state.range(0)));
  ModelParams params = bench_params();
  auto psi0 = wave(g);
  auto psi1 = velocity(g);
  for (auto _ : state) {
    OdeState s = rk4_integrate(g, params, psi0, psi1, 1e-3, 1e-3);
    benchmark::DoNotOptimize(&s);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Rk4Step)->Arg(64)->Arg(128);

BENCHMARK_MAIN();

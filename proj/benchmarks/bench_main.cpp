// Microbenchmarks for the hot paths: effective Hamiltonian assembly and
// diagonalization, gauge solves, full CEF diagonalization at large J, and
// the phi-sweep driver used by the level-crossing scans.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "polyspin/berry_effective.hpp"
#include "polyspin/exact_spectrum.hpp"
#include "polyspin/geometry.hpp"
#include "polyspin/group_rep.hpp"
#include "polyspin/observables.hpp"

namespace {

using namespace polyspin;

void BM_SolveGauge(benchmark::State& state, ConfigKind kind) {
  const Configuration config = make_configuration(kind);
  const SpinValue s(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_gauge(config, s));
  }
}
BENCHMARK_CAPTURE(BM_SolveGauge, octahedron, ConfigKind::O4)->Arg(48);
BENCHMARK_CAPTURE(BM_SolveGauge, icosahedron, ConfigKind::Y5)->Arg(48);

void BM_BuildEffective(benchmark::State& state, ConfigKind kind) {
  const Configuration config = make_configuration(kind);
  const SpinValue s(static_cast<int>(state.range(0)));
  const GaugePhases gauge = solve_gauge(config, s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_effective(config, s, {}, &gauge));
  }
}
BENCHMARK_CAPTURE(BM_BuildEffective, octahedron, ConfigKind::O4)->Arg(48);
BENCHMARK_CAPTURE(BM_BuildEffective, dodecahedron, ConfigKind::Y3)->Arg(48);

void BM_EffectiveSpectrum(benchmark::State& state, ConfigKind kind) {
  const Configuration config = make_configuration(kind);
  const SpinValue s(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(effective_spectrum(config, s));
  }
}
BENCHMARK_CAPTURE(BM_EffectiveSpectrum, icosahedron, ConfigKind::Y5)->Arg(48);

void BM_ClosedFormSpectrum(benchmark::State& state, ConfigKind kind) {
  const Configuration config = make_configuration(kind);
  const SpinValue s(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(closed_form_spectrum(config, s));
  }
}
BENCHMARK_CAPTURE(BM_ClosedFormSpectrum, icosahedron, ConfigKind::Y5)->Arg(48);

void BM_CefDiagonalize(benchmark::State& state) {
  const SpinValue s(static_cast<int>(state.range(0)));
  const double phi = 0.2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(diagonalize(cubic_cef_hamiltonian(s, phi)));
  }
}
BENCHMARK(BM_CefDiagonalize)->Arg(24)->Arg(48)->Arg(96);

void BM_SweepPoint(benchmark::State& state) {
  const SpinValue s(static_cast<int>(state.range(0)));
  const std::vector<double> phis = {0.2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep_phi(s, phis));
  }
}
BENCHMARK(BM_SweepPoint)->Arg(48);

void BM_Decompose(benchmark::State& state) {
  const SpinValue s(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose(Group::Y, 5, s));
  }
}
BENCHMARK(BM_Decompose)->Arg(48);

void BM_Susceptibility(benchmark::State& state) {
  const Configuration config = make_configuration(ConfigKind::O4);
  const SpinValue s(static_cast<int>(state.range(0)));
  const Vec3 dir(0, 0, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(effective_susceptibility(config, s, 1.0, 0.01, dir));
  }
}
BENCHMARK(BM_Susceptibility)->Arg(48);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <cmath>

#include "memslab/nonlinearity.hpp"
#include "memslab/numerics.hpp"
#include "memslab/radial_solver.hpp"
#include "memslab/spectral.hpp"

using namespace memslab;

static void BM_SolveProfile(benchmark::State& state) {
  nonlin::Nonlinearity nl = nonlin::Nonlinearity::mems();
  const double s = state.range(0) / 1000.0;
  for (auto _ : state) {
    radial::RadialProfile prof = radial::solve_profile(nl, s, 3.0);
    benchmark::DoNotOptimize(prof.lambda);
  }
}
BENCHMARK(BM_SolveProfile)->Arg(300)->Arg(700)->Arg(990);

static void BM_RayleighMin(benchmark::State& state) {
  nonlin::Nonlinearity nl = nonlin::Nonlinearity::mems();
  radial::RadialProfile prof = radial::solve_profile(nl, 0.3, 3.0);
  spectral::SpectralOptions opt;
  opt.m = int(state.range(0));
  for (auto _ : state) {
    spectral::SpectralResult res = spectral::rayleigh_min(nl, prof, opt);
    benchmark::DoNotOptimize(res.mu1);
  }
}
BENCHMARK(BM_RayleighMin)->Arg(200)->Arg(400)->Arg(800);

static void BM_QuadAdaptive(benchmark::State& state) {
  num::Tolerance tol;
  tol.abs_tol = tol.rel_tol = std::pow(10.0, -double(state.range(0)));
  for (auto _ : state) {
    auto r = num::quad_adaptive(
        [](double x) { return std::exp(-x) * std::cos(40.0 * x); }, 0.0, 5.0,
        tol);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_QuadAdaptive)->Arg(6)->Arg(9)->Arg(12);

static void BM_BranchSweep(benchmark::State& state) {
  nonlin::Nonlinearity nl = nonlin::Nonlinearity::mems();
  radial::SGrid grid;
  grid.count = int(state.range(0));
  for (auto _ : state) {
    radial::Branch br = radial::solve_branch(nl, 3.0, grid, {}, 4);
    benchmark::DoNotOptimize(br.lambda_star);
  }
}
BENCHMARK(BM_BranchSweep)->Arg(30)->Arg(150);

BENCHMARK_MAIN();

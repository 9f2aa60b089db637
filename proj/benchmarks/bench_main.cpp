#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "nssing/geometry_quadrature.hpp"
#include "nssing/landau_fields.hpp"
#include "nssing/norms.hpp"
#include "nssing/picard_solver.hpp"
#include "nssing/spectral.hpp"
#include "nssing/weak_form.hpp"

using namespace nssing;

static void BM_LandauEval(benchmark::State& state) {
  const auto p = LandauParams::from_A(2.0, Vec3(0.3, -0.2, 1.0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<Vec3> pts;
  for (int k = 0; k < 1024; ++k) pts.emplace_back(uni(rng), uni(rng), uni(rng) + 2.0);
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(landau_eval(p, pts[k++ & 1023]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_LandauEval);

static void BM_BetaInverse(benchmark::State& state) {
  double beta = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(A_from_beta(beta));
    beta = beta < 1e3 ? beta * 1.1 : 0.5;
  }
}
BENCHMARK(BM_BetaInverse);

static void BM_FluxIntegral(benchmark::State& state) {
  const auto p = LandauParams::from_A(2.0);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(flux_integral(sampled(p), 1.0, {n, 2 * n}));
}
BENCHMARK(BM_FluxIntegral)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

static void BM_WeakResidual(benchmark::State& state) {
  const auto p = LandauParams::from_A(2.0);
  const auto phi = make_test_function({}, 0.5, 1.0, Vec3::unit(2));
  const QuadratureRule rule = transition_rule(phi);
  for (auto _ : state) benchmark::DoNotOptimize(weak_residual(sampled(p), phi, rule));
}
BENCHMARK(BM_WeakResidual)->Unit(benchmark::kMillisecond);

static void BM_WeakL3(benchmark::State& state) {
  const auto s = cell_samples([](const Vec3& x) { return 1.0 / x.norm(); }, 0.0, 2.0,
                              static_cast<int>(state.range(0)), 25, 40);
  for (auto _ : state) benchmark::DoNotOptimize(weak_l3_quasinorm(s));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(s.size()));
}
BENCHMARK(BM_WeakL3)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_PicardStep(benchmark::State& state) {
  const SpectralGrid grid(static_cast<std::size_t>(state.range(0)));
  const MollifiedDrift drift = make_drift(grid, LandauParams::from_beta(1.0));
  const SpectralField f = abc_forcing(grid, 1e-3);
  SpectralField v = stokes_solve(grid, f);
  for (auto _ : state) {
    v = picard_step(grid, v, drift, f);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_PicardStep)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

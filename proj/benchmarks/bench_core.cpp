#include <benchmark/benchmark.h>

#include <cmath>

#include "ruledgeo/geodesic.hpp"
#include "ruledgeo/presets.hpp"
#include "ruledgeo/reconstruction.hpp"
#include "ruledgeo/scenario.hpp"
#include "ruledgeo/striction.hpp"

using namespace ruledgeo;

namespace {

void BM_ChristoffelHalfspace(benchmark::State& state) {
  const ChartMetric m = halfspace_metric(-1.0);
  const Vec3 p(0.3, -0.2, 1.1);
  for (auto _ : state) benchmark::DoNotOptimize(m.christoffel(p));
}
BENCHMARK(BM_ChristoffelHalfspace);

void BM_RiemannProductChart(benchmark::State& state) {
  TrigPoly rho;
  rho.poly = {2.0};
  rho.sines = {{1.0, 1.0}};
  const ChartMetric m = revolution_product_metric(rho, std::nullopt);
  const Vec3 p(0.1, 0.5, 0.8);
  for (auto _ : state) benchmark::DoNotOptimize(m.riemann(p));
}
BENCHMARK(BM_RiemannProductChart);

void BM_ExpMapSphere(benchmark::State& state) {
  const ChartMetric m = sphere_metric(1.0);
  const ChartPoint p{Vec3(1.0, 0, 0)};
  const TangentVec Z{p, Vec3(0, 1.25, 0)};
  for (auto _ : state)
    benchmark::DoNotOptimize(exp_map(m, p, Z, 1.0, 1e-3));
}
BENCHMARK(BM_ExpMapSphere);

void BM_RulingSweepExample2(benchmark::State& state) {
  const RuledSurfaceSpec spec =
      io::build_spec(io::builtin_scenario("example2"));
  for (auto _ : state)
    benchmark::DoNotOptimize(ruling_sweep(spec, 1.0, 0.0, 3.0, 1e-3));
}
BENCHMARK(BM_RulingSweepExample2);

void BM_StrictionRulingExample2(benchmark::State& state) {
  const RuledSurfaceSpec spec =
      io::build_spec(io::builtin_scenario("example2"));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        find_striction_numeric(spec, {1.0}, 0.0, 7.5));
}
BENCHMARK(BM_StrictionRulingExample2);

void BM_ReconstructUnitInterval(benchmark::State& state) {
  const ChartMetric m = halfspace_metric(-1.0);
  InvariantPrescription presc;
  presc.u0 = 0;
  presc.u_begin = 0;
  presc.u_end = 1.0;
  presc.kappa1 = [](double u) { return 1.2 + 0.3 * std::sin(3 * u); };
  presc.kappa2 = [](double u) { return 0.5 * std::cos(2 * u); };
  presc.theta = [](double u) { return 0.4 * std::sin(2 * u); };
  presc.phi = [](double u) { return 0.3 * std::cos(3 * u); };
  presc.p0 = ChartPoint{Vec3(0, 0, 1)};
  presc.frame0 = SanniaFrame{TangentVec{presc.p0, Vec3(1, 0, 0)},
                             TangentVec{presc.p0, Vec3(0, 1, 0)},
                             TangentVec{presc.p0, Vec3(0, 0, 1)}};
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct(m, presc, 1e-3));
}
BENCHMARK(BM_ReconstructUnitInterval);

}  // namespace

BENCHMARK_MAIN();

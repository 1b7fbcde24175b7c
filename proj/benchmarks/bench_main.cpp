#include "cosdyn/boettcher.hpp"
#include "cosdyn/classify.hpp"
#include "cosdyn/rays.hpp"
#include "cosdyn/scan.hpp"

#include <benchmark/benchmark.h>

using namespace cosdyn;

static void classify_point(benchmark::State& st, cplx v) {
  const Parameter p(v);
  for (auto _ : st)
    benchmark::DoNotOptimize(classify(p));
}
BENCHMARK_CAPTURE(classify_point, small_A, cplx(0.1, 0.05));
BENCHMARK_CAPTURE(classify_point, inside_A, cplx(0.7, 0.3));
BENCHMARK_CAPTURE(classify_point, type_C, cplx(-3.1, 0.05));
BENCHMARK_CAPTURE(classify_point, type_D, cplx(1.6, 0.0));
BENCHMARK_CAPTURE(classify_point, escaping, cplx(0.0, 2.0));

// One 64x64 tile of the standard parameter-plane scan, taken around the
// main component where classification is most expensive.
static void scan_tile(benchmark::State& st) {
  ScanConfig cfg;
  cfg.bbox = Rect{-1.28, -1.28, 1.28, 1.28};
  cfg.width = cfg.height = 64;
  cfg.threads = static_cast<int>(st.range(0));
  for (auto _ : st)
    benchmark::DoNotOptimize(scan_parameter_plane(cfg));
}
BENCHMARK(scan_tile)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond)->UseRealTime();

static void dyn_tile(benchmark::State& st) {
  ScanConfig cfg;
  cfg.bbox = Rect{-6.0, -4.0, 6.0, 4.0};
  cfg.width = cfg.height = 64;
  cfg.threads = 1;
  const Parameter v(cplx(1.0, 0.5));
  for (auto _ : st)
    benchmark::DoNotOptimize(scan_dynamical_plane(v, cfg));
}
BENCHMARK(dyn_tile)->Unit(benchmark::kMillisecond);

static void boettcher_point(benchmark::State& st) {
  const Parameter v(cplx(3.0, 3.0));
  const cplx z = cplx(0.4, 0.3) / cplx(-1.5, -1.5);
  for (auto _ : st)
    benchmark::DoNotOptimize(boettcher_coord(v, z));
}
BENCHMARK(boettcher_point);

static void ray_point(benchmark::State& st) {
  const Parameter v(cplx(1.0, 0.5));
  const ExternalAddress a = ExternalAddress::parse("(0,1);(1,0)");
  const double t = static_cast<double>(st.range(0)) / 4.0;
  for (auto _ : st)
    benchmark::DoNotOptimize(dynamic_ray_point(v, a, t));
}
BENCHMARK(ray_point)->Arg(2)->Arg(8)->Arg(20);

static void parameter_ray(benchmark::State& st) {
  const ExternalAddress a = ExternalAddress::parse("(0,0)");
  const auto seed = seed_parameter_ray(a, 5.0, Rect::centered(8.0));
  for (auto _ : st)
    benchmark::DoNotOptimize(trace_parameter_ray(a, 5.0, 1.0, 16, *seed));
}
BENCHMARK(parameter_ray)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

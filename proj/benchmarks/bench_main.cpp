#include <benchmark/benchmark.h>

#include "mlstat/dt_lattice.hpp"
#include "mlstat/surface.hpp"
#include "mlstat/torus.hpp"
#include "mlstat/wp_cells.hpp"

namespace {

void BM_enumerate_short_slopes(benchmark::State& st) {
  const mlstat::TorusPoint X{1.9248473002384139, 0.3};
  const double L = static_cast<double>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(mlstat::enumerate_short_slopes(X, L));
}
BENCHMARK(BM_enumerate_short_slopes)->Arg(10)->Arg(20)->Arg(40);

void BM_count_ball(benchmark::State& st) {
  const auto dec = mlstat::builtin_surface("S04");
  const mlstat::CombWeights w({1.0}, {1.0});
  const double L = static_cast<double>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(mlstat::count_ball(dec, w, L));
}
BENCHMARK(BM_count_ball)->Arg(100)->Arg(1000)->Arg(10000);

void BM_count_ball_s12(benchmark::State& st) {
  const auto dec = mlstat::builtin_surface("S12");
  const mlstat::CombWeights w({1.0, 1.3}, {0.5, 1.1});
  const double L = static_cast<double>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(mlstat::count_ball(dec, w, L));
}
BENCHMARK(BM_count_ball_s12)->Arg(20)->Arg(40);

void BM_mc_integrate(benchmark::State& st) {
  mlstat::CellSpec spec;
  spec.surface = mlstat::SurfaceType{1, 1};
  spec.thin_count = 1;
  const auto f = mlstat::named_functional("F2", spec.surface, spec.epsilon);
  const auto n = static_cast<std::size_t>(st.range(0));
  for (auto _ : st)
    benchmark::DoNotOptimize(mlstat::mc_integrate_log(f, spec, n, 1, mlstat::Sampling::CuspAdapted));
  st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations()) * st.range(0));
}
BENCHMARK(BM_mc_integrate)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();

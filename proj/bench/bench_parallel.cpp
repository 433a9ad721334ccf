// Serial reference against the OpenMP path for the three parallel loops:
// Nystrom assembly (rows), potential evaluation and field reconstruction (points).

#include <benchmark/benchmark.h>

#include "biaxial/geometry.hpp"
#include "biaxial/solver.hpp"

using namespace biaxial;

namespace {

const Params kP(0.25, 0.25);

const Curve& oval() {
  static const Curve c = make_curve(CurveFamily::FlattenedOval, 1.0, 1.0, 0.5);
  return c;
}

std::vector<Point> grid(int m) {
  std::vector<Point> pts;
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j) pts.push_back({0.6 * i / (m + 1), 0.6 * j / (m + 1)});
  return pts;
}

Exec exec_of(const benchmark::State& st) { return st.range(1) ? Exec::Parallel : Exec::Serial; }

void BM_assemble(benchmark::State& st) {
  NystromOptions opt;
  opt.exec = exec_of(st);
  for (auto _ : st)
    benchmark::DoNotOptimize(assemble(oval(), int(st.range(0)), Side::Interior, kP, opt));
}

void BM_double_layer(benchmark::State& st) {
  const auto pts = grid(int(st.range(0)));
  const Density mu([](double t) { return 1.0 + t * t; });
  const FundamentalSolution q(kP);
  for (auto _ : st)
    benchmark::DoNotOptimize(double_layer_batch(oval(), mu, pts, q, {}, exec_of(st)));
}

void BM_reconstruct(benchmark::State& st) {
  static const BVPSolution sol = [] {
    const NystromSystem sys = assemble(oval(), 64, Side::Interior, kP);
    return solve_dirichlet(sys, sample_data(oval(), sys.rule, [](Point z) { return z.x + z.y; }));
  }();
  const auto pts = grid(int(st.range(0)));
  const FundamentalSolution q(kP);
  for (auto _ : st) benchmark::DoNotOptimize(reconstruct_batch(sol, oval(), pts, q, exec_of(st)));
}

}  // namespace

// second argument: 0 serial, 1 OpenMP
BENCHMARK(BM_assemble)->ArgsProduct({{32}, {0, 1}})->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(BM_double_layer)->ArgsProduct({{3}, {0, 1}})->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(BM_reconstruct)->ArgsProduct({{10}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

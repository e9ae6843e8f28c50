// Serial reference path against the OpenMP path for the heavy kernels.
// Arg 0 selects serial, 1 parallel.

#include <benchmark/benchmark.h>

#include "lorentz/geodesic.hpp"
#include "lorentz/nulldist.hpp"
#include "lorentz/sprinkle.hpp"

using namespace lorentz;

namespace {

Execution exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::kSerial : Execution::kParallel;
}

const CausalSetSpace& sprinkled() {
  static const CausalSetSpace space = [] {
    SprinkleOptions o;
    o.density = 400;
    o.seed = 1;
    return sprinkle_causet(Event(0, 0.0), Event(2, 0.0), o);
  }();
  return space;
}

struct Graph {
  std::vector<std::vector<std::uint32_t>> succ;
  std::vector<std::vector<std::pair<std::uint32_t, double>>> out;
};

const Graph& sprinkled_graph() {
  static const Graph g = [] {
    Graph g;
    const auto& s = sprinkled();
    g.succ.resize(s.size());
    g.out.resize(s.size());
    for (const auto& l : s.links()) {
      g.succ[l.src].push_back(l.dst);
      g.out[l.src].emplace_back(l.dst, l.tau);
    }
    return g;
  }();
  return g;
}

void BM_Reachability(benchmark::State& state) {
  const auto& s = sprinkled();
  const auto& g = sprinkled_graph();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::reachability(g.succ, s.topological_order(), exec_of(state)));
  state.SetLabel(std::to_string(s.size()) + " elements");
}

void BM_LongestPaths(benchmark::State& state) {
  const auto& s = sprinkled();
  const auto& g = sprinkled_graph();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::longest_paths(g.out, s.topological_order(), exec_of(state)));
}

void BM_NullDistanceMatrix(benchmark::State& state) {
  const auto& s = sprinkled();
  const auto T = causet_time(s);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::null_distance_matrix(s, T, exec_of(state)));
}

void BM_Sprinkle(benchmark::State& state) {
  SprinkleOptions o;
  o.density = 400;
  o.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(sprinkle_causet(Event(0, 0.0), Event(2, 0.0), o));
}

void BM_DyadicBuild(benchmark::State& state) {
  BuildOptions o;
  o.depth = 14;
  o.exec = exec_of(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_dyadic_curve(MinkowskiSpace(), canonical_time(), Event(0, 0.0), Event(2, 1.0), o));
  }
}

void BM_ReverseTriangle(benchmark::State& state) {
  CheckOptions o;
  o.sample_budget = 20000;
  o.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(check_reverse_triangle(MinkowskiSpace(), o));
}

}  // namespace

BENCHMARK(BM_Reachability)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LongestPaths)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NullDistanceMatrix)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sprinkle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DyadicBuild)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReverseTriangle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

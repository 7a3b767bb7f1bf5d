#include <benchmark/benchmark.h>

#include "ffcm/graphs.hpp"
#include "ffcm/io.hpp"

using namespace ffcm;

static void BM_BuildGraph720(benchmark::State& state) {
  Fq f(3);
  Poly g = parse_poly(f, "t^2+t+2");
  for (auto _ : state) benchmark::DoNotOptimize(build_graph(f, g, f.neg(1)));
}
BENCHMARK(BM_BuildGraph720);

static void BM_Diameter720(benchmark::State& state) {
  Fq f(3);
  CayleyGraph g = build_graph(f, parse_poly(f, "t^2+t+2"), f.neg(1));
  for (auto _ : state) benchmark::DoNotOptimize(diameter(g));
}
BENCHMARK(BM_Diameter720);

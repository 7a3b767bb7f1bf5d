#include <benchmark/benchmark.h>

#include "ffcm/io.hpp"
#include "ffcm/poly.hpp"

using namespace ffcm;

static void BM_PolyMulDeg8(benchmark::State& state) {
  Fq f(3);
  Poly a = parse_poly(f, "t^8+2*t^5+t^3+2");
  Poly b = parse_poly(f, "2*t^8+t^4+t+1");
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_PolyMulDeg8);

static void BM_InvModDeg6(benchmark::State& state) {
  Fq f(3);
  Poly x = parse_poly(f, "t^3+t+2");
  Poly r = parse_poly(f, "t^6+t^4+t^2+t+2");
  for (auto _ : state) benchmark::DoNotOptimize(inv_mod(x, r));
}
BENCHMARK(BM_InvModDeg6);

static void BM_IrreducibleDeg8(benchmark::State& state) {
  Fq f(3);
  Poly g = parse_poly(f, "t^8+t^3+2");
  for (auto _ : state) benchmark::DoNotOptimize(is_irreducible(g));
}
BENCHMARK(BM_IrreducibleDeg8);

BENCHMARK_MAIN();

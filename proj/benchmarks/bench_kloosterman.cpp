#include <benchmark/benchmark.h>

#include "ffcm/io.hpp"
#include "ffcm/kloosterman.hpp"

using namespace ffcm;

static void BM_KlFiniteDeg3(benchmark::State& state) {
  Fq f(3);
  Poly r = parse_poly(f, "t^3+2*t+1");
  Poly m = parse_poly(f, "t+1"), n = parse_poly(f, "t^2+2");
  for (auto _ : state) benchmark::DoNotOptimize(kl_finite(m, n, r));
}
BENCHMARK(BM_KlFiniteDeg3);

static void BM_KlInfinityClosed(benchmark::State& state) {
  Fq f(3);
  Laurent alpha = Laurent::from_rational(parse_poly(f, "t^4+t+1"), parse_poly(f, "t^2+1"), -40);
  for (auto _ : state) benchmark::DoNotOptimize(kl_infinity_closed(alpha));
}
BENCHMARK(BM_KlInfinityClosed);

static void BM_GaussTauDeg4(benchmark::State& state) {
  Fq f(3);
  Poly r = parse_poly(f, "t^4+t^2+2");
  for (auto _ : state) benchmark::DoNotOptimize(gauss_tau(r));
}
BENCHMARK(BM_GaussTauDeg4);

#include <benchmark/benchmark.h>

#include "ffcm/circle.hpp"
#include "ffcm/io.hpp"

using namespace ffcm;

namespace {
SystemParams instance() {
  Fq f(3);
  MorgensternForm form = MorgensternForm::make(f, f.neg(1));
  return SystemParams::make(form, parse_poly(f, "t^2"), parse_poly(f, "t+2"),
                            {parse_poly(f, "1"), parse_poly(f, "0"), parse_poly(f, "0"),
                             parse_poly(f, "0")});
}
}  // namespace

static void BM_ExpSumDirect(benchmark::State& state) {
  SystemParams p = instance();
  Fq f = p.form.field;
  Poly r = parse_poly(f, "t^2+1");
  PolyVec4 c{parse_poly(f, "2"), parse_poly(f, "0"), parse_poly(f, "0"), parse_poly(f, "0")};
  for (auto _ : state) benchmark::DoNotOptimize(exp_sum_direct(p, r, c));
}
BENCHMARK(BM_ExpSumDirect);

static void BM_ExpSumClosed(benchmark::State& state) {
  SystemParams p = instance();
  Fq f = p.form.field;
  Poly r = parse_poly(f, "t^2+1");
  PolyVec4 c{parse_poly(f, "2"), parse_poly(f, "0"), parse_poly(f, "0"), parse_poly(f, "0")};
  for (auto _ : state) benchmark::DoNotOptimize(exp_sum_closed(p, r, c));
}
BENCHMARK(BM_ExpSumClosed);

static void BM_DeltaReconstruct(benchmark::State& state) {
  SystemParams p = instance();
  for (auto _ : state) benchmark::DoNotOptimize(delta_reconstruct(p));
}
BENCHMARK(BM_DeltaReconstruct);

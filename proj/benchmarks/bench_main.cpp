#include <benchmark/benchmark.h>

#include "divpair/curve.hpp"
#include "divpair/literal.hpp"
#include "divpair/mvf.hpp"
#include "divpair/pairing.hpp"
#include "divpair/sampling.hpp"

using namespace divpair;

static void BM_Theta1(benchmark::State& state) {
  const cdouble tau{0.2, 0.5 + 0.5 * static_cast<double>(state.range(0))};
  cdouble z{0.31, 0.17};
  for (auto _ : state) {
    benchmark::DoNotOptimize(theta1(z, tau));
    z += 1e-9;
  }
}
BENCHMARK(BM_Theta1)->DenseRange(0, 3);

static void BM_GreenKernelTorus(benchmark::State& state) {
  const auto curve = CurveModel::torus({0.3, 1.1});
  const auto p = CurvePoint::affine({0.2, 0.4});
  const auto q = CurvePoint::affine({0.7, 0.1});
  for (auto _ : state) benchmark::DoNotOptimize(green_kernel(curve, p, q));
}
BENCHMARK(BM_GreenKernelTorus);

static void BM_PairingNorm(benchmark::State& state) {
  Rng rng(7);
  const auto curve = state.range(0) ? CurveModel::torus({0.3, 1.1}) : CurveModel::sphere();
  const auto inst = random_pairing_instance(rng, curve, true);
  for (auto _ : state) benchmark::DoNotOptimize(pairing_norm(inst.d1, inst.d2).norm);
}
BENCHMARK(BM_PairingNorm)->Arg(0)->Arg(1);

static void BM_IsPrincipalTorus(benchmark::State& state) {
  Rng rng(8);
  const auto pair = random_class_pair(rng, CurveModel::torus({0.1, 0.9}), true);
  const auto d = pair.d1 - pair.d2;
  for (auto _ : state) benchmark::DoNotOptimize(is_principal(d).principal);
}
BENCHMARK(BM_IsPrincipalTorus)->Unit(benchmark::kMillisecond);

static void BM_DivisorParse(benchmark::State& state) {
  auto ctx = MarkedCurve::create(CurveModel::sphere(),
                                 {CurvePoint::affine(0.0), CurvePoint::affine(1.0)});
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_divisor("1/2+i@Q1,-1/2-i@Q2,3@2.5-1i,-3@inf", ctx));
  }
}
BENCHMARK(BM_DivisorParse);

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "hbloch/bloch.hpp"
#include "hbloch/disk_geometry.hpp"
#include "hbloch/extremal.hpp"
#include "hbloch/support.hpp"

namespace {

void BM_BlochConstant(benchmark::State& state) {
  const auto f = hbloch::sample_unit_ball(3, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hbloch::bloch_constant(f));
}
BENCHMARK(BM_BlochConstant)->Arg(1)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_LambdaSetCurve(benchmark::State& state) {
  const auto f = hbloch::counterexample_family(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(hbloch::lambda_set(f, 1e-6));
}
BENCHMARK(BM_LambdaSetCurve)->Unit(benchmark::kMillisecond);

void BM_Precompose(benchmark::State& state) {
  const auto f = hbloch::sample_unit_ball(5, 6);
  const hbloch::MobiusAutomorphism phi({0.3, -0.2}, 0.4);
  for (auto _ : state)
    benchmark::DoNotOptimize(hbloch::precompose(f, phi, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_Precompose)->Arg(40)->Arg(160);

void BM_Mu(benchmark::State& state) {
  const auto f = hbloch::sample_unit_ball(7, 8);
  const hbloch::Complex z{0.3, 0.4};
  for (auto _ : state) benchmark::DoNotOptimize(hbloch::mu(f, z));
}
BENCHMARK(BM_Mu);

void BM_SupportCertificate(benchmark::State& state) {
  const auto f = hbloch::counterexample_family(1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(hbloch::support_certificate(f, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SupportCertificate)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();

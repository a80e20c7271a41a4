#include <random>
#include <string>

#include <benchmark/benchmark.h>

#include "gqml/algebra.hpp"
#include "gqml/dirac.hpp"
#include "gqml/rapid_decay.hpp"
#include "gqml/spec_io.hpp"

namespace {

const char* kSpecs[] = {"z2_swap", "z4_rotation", "s3_natural"};

gqml::GroupoidSpec load(int i) {
  return gqml::parse_groupoid_spec(gqml::read_json_file(std::string(GQML_SPEC_DIR) + "/" + kSpecs[i] + ".json"));
}

void BM_ReducedNorm(benchmark::State& state) {
  const auto spec = load(static_cast<int>(state.range(0)));
  std::mt19937_64 rng(1);
  const auto f = gqml::AlgebraElement::random(spec.groupoid, rng);
  for (auto _ : state) benchmark::DoNotOptimize(gqml::reduced_norm(f));
  state.SetLabel(kSpecs[state.range(0)]);
}
BENCHMARK(BM_ReducedNorm)->DenseRange(0, 2);

void BM_Convolve(benchmark::State& state) {
  const auto spec = load(static_cast<int>(state.range(0)));
  std::mt19937_64 rng(2);
  const auto f = gqml::AlgebraElement::random(spec.groupoid, rng);
  const auto g = gqml::AlgebraElement::random(spec.groupoid, rng);
  for (auto _ : state) benchmark::DoNotOptimize(gqml::convolve(f, g));
  state.SetLabel(kSpecs[state.range(0)]);
}
BENCHMARK(BM_Convolve)->DenseRange(0, 2);

void BM_Lipschitz(benchmark::State& state) {
  const auto spec = load(static_cast<int>(state.range(0)));
  std::mt19937_64 rng(3);
  const auto f = gqml::AlgebraElement::random(spec.groupoid, rng);
  for (auto _ : state) benchmark::DoNotOptimize(gqml::lipschitz_seminorm(spec.length, f, 2));
  state.SetLabel(kSpecs[state.range(0)]);
}
BENCHMARK(BM_Lipschitz)->DenseRange(0, 2);

void BM_QuotientNorm(benchmark::State& state) {
  const auto spec = load(static_cast<int>(state.range(0)));
  std::mt19937_64 rng(4);
  const auto f = gqml::AlgebraElement::random(spec.groupoid, rng);
  for (auto _ : state) benchmark::DoNotOptimize(gqml::quotient_norm(f).value);
  state.SetLabel(kSpecs[state.range(0)]);
}
BENCHMARK(BM_QuotientNorm)->DenseRange(0, 2);

void BM_RdReport(benchmark::State& state) {
  const auto spec = load(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gqml::empirical_rd_constant(spec.length, {.p = 0.5, .samples = 1000}).empirical_c);
  }
  state.SetLabel(kSpecs[state.range(0)]);
}
BENCHMARK(BM_RdReport)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

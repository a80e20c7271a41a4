#include <string>

#include <benchmark/benchmark.h>

#include "gqml/metric.hpp"
#include "gqml/spec_io.hpp"

namespace {

const char* kSpecs[] = {"z2_swap", "s3_point", "z4_rotation", "s3_natural"};

gqml::GroupoidSpec load(int i) {
  return gqml::parse_groupoid_spec(gqml::read_json_file(std::string(GQML_SPEC_DIR) + "/" + kSpecs[i] + ".json"));
}

// range(0): spec index, range(1): k
void BM_ConnesDistance(benchmark::State& state) {
  const auto spec = load(static_cast<int>(state.range(0)));
  const auto mu = gqml::random_state(spec.groupoid, 1);
  const auto nu = gqml::random_same_fibre_state(mu, 2);
  const int k = static_cast<int>(state.range(1));
  int cuts = 0;
  for (auto _ : state) {
    const auto cert = gqml::connes_distance(spec.length, mu, nu, {.k = k});
    cuts = cert.cuts;
    benchmark::DoNotOptimize(cert.upper);
  }
  state.counters["cuts"] = cuts;
  state.SetLabel(kSpecs[state.range(0)]);
}
BENCHMARK(BM_ConnesDistance)->ArgsProduct({{0, 1, 2, 3}, {1, 2}})->Unit(benchmark::kMillisecond);

void BM_BruteForce(benchmark::State& state) {
  const auto spec = load(static_cast<int>(state.range(0)));
  const auto mu = gqml::random_state(spec.groupoid, 1);
  const auto nu = gqml::random_same_fibre_state(mu, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gqml::brute_force_distance(spec.length, mu, nu, {.k = 1, .samples = 20'000}));
  }
  state.SetLabel(kSpecs[state.range(0)]);
}
BENCHMARK(BM_BruteForce)->DenseRange(0, 1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

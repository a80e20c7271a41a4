// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "gqml/algebra.hpp"
#include "gqml/dirac.hpp"
#include "gqml/metric.hpp"
#include "gqml/rapid_decay.hpp"
#include "gqml/spec_io.hpp"
#include "gqml/state.hpp"
#include "gqml_app/cli.hpp"

namespace {

using namespace gqml;

using Clock = std::chrono::steady_clock;

GroupoidSpec load(const std::string& name) {
  return parse_groupoid_spec(read_json_file(std::string(GQML_SPEC_DIR) + "/" + name + ".json"));
}

const std::vector<std::string> kSpecs{"z2_point", "z2_swap",    "z3_point",   "klein_point", "z4_point",
                                      "z4_rotation", "z3_rotation", "s3_point", "s3_natural"};

int worker_threads() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

char buf[512];

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

ComplexVector character(double sign) {
  ComplexVector psi(2);
  psi << 1.0 / std::sqrt(2.0), sign / std::sqrt(2.0);
  return psi;
}

Outcome ac1() {
  const auto spec = load("z2_point");
  const auto start = Clock::now();
  const auto plus = vector_state(spec.groupoid, 0, character(1.0));
  const auto minus = vector_state(spec.groupoid, 0, character(-1.0));
  const auto cert = connes_distance(spec.length, plus, minus, {.k = 1, .tol = 1e-6});
  const double elapsed = seconds_since(start);
  const double brute = brute_force_distance(spec.length, plus, minus, {.k = 1, .samples = 1'000'000});
  const bool ok = cert.status == DistanceStatus::Converged && cert.lower >= 2.0 - 1e-6 &&
                  cert.upper <= 2.0 + 1e-6 && cert.gap <= 1e-6 && elapsed < 1.0 &&
                  std::abs(brute - 2.0) <= 1e-6;
  return {ok, fmt("lower=%.12f upper=%.12f gap=%.2e brute=%.12f time=%.3fs", cert.lower, cert.upper, cert.gap,
                  brute, elapsed)};
}

Outcome ac2() {
  const auto start = Clock::now();
  double worst = 0.0;
  std::mt19937_64 rng(2);
  for (const auto& name : {"z2_swap", "z4_rotation", "s3_natural"}) {
    const auto spec = load(name);
    for (int trial = 0; trial < 500; ++trial) {
      const auto f = AlgebraElement::random(spec.groupoid, rng);
      const auto fs = involution(f);
      for (int k = 1; k <= 4; ++k) {
        const double sign = k % 2 == 0 ? 1.0 : -1.0;
        for (int x = 0; x < spec.groupoid.space_size(); ++x) {
          const ComplexMatrix lhs = delta_matrix(spec.length, f, x, k).matrix.adjoint();
          const ComplexMatrix rhs = sign * delta_matrix(spec.length, fs, x, k).matrix;
          worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  return {worst <= 1e-12 && elapsed < 10.0, fmt("max deviation=%.3e time=%.3fs", worst, elapsed)};
}

Outcome ac3() {
  std::mt19937_64 rng(3);
  double worst_kernel = 0.0;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (const auto& name : kSpecs) {
    const auto spec = load(name);
    const auto& G = spec.groupoid;
    const double lmin = spec.length.min_positive();
    std::uniform_int_distribution<int> pick(0, G.size() - 1);
    std::normal_distribution<double> n01;
    for (int trial = 0; trial < 100; ++trial) {
      const auto phi = restrict_to_units(AlgebraElement::random(G, rng));
      Arrow a;
      do {
        a = G.arrow(pick(rng));
      } while (G.is_unit(a));
      const auto single = AlgebraElement::delta(G, a, Complex(n01(rng), n01(rng)));
      for (int k = 1; k <= 3; ++k) {
        worst_kernel = std::max(worst_kernel, lipschitz_seminorm(spec.length, phi, k));
        const double lhs = lipschitz_seminorm(spec.length, single, k);
        worst_margin = std::min(worst_margin, lhs - (lmin * sup_norm(single) - 1e-9));
      }
    }
  }
  return {worst_kernel <= 1e-12 && worst_margin >= 0.0,
          fmt("max L(unit-supported)=%.3e min margin(single off-unit)=%.3e", worst_kernel, worst_margin)};
}

Outcome ac4() {
  const auto spec = load("z2_swap");
  int infinite = 0, pairs = 0;
  std::uint64_t seed = 1000;
  while (pairs < 50) {
    const auto mu = random_state(spec.groupoid, seed++);
    const auto nu = random_state(spec.groupoid, seed++);
    if (fibre_distance(mu, nu) <= 1e-6) continue;
    ++pairs;
    if (connes_distance(spec.length, mu, nu).status == DistanceStatus::Infinite) ++infinite;
  }
  return {infinite == 50, fmt("%d/50 pairs infinite", infinite)};
}

Outcome ac5() {
  std::mt19937_64 rng(5);
  double chain = std::numeric_limits<double>::infinity();
  double cstar = 0.0;
  for (const auto& name : kSpecs) {
    const auto G = load(name).groupoid;
    for (int trial = 0; trial < 1000; ++trial) {
      const auto f = AlgebraElement::random(G, rng);
      const double sup = sup_norm(f), red = reduced_norm(f), inorm = i_norm(f);
      chain = std::min({chain, red - sup, inorm - red});
      const double ff = reduced_norm(convolve(involution(f), f));
      cstar = std::max(cstar, std::abs(ff - red * red) / (red * red));
    }
  }
  return {chain >= -1e-12 && cstar <= 1e-9, fmt("min slack=%.3e max relative C* defect=%.3e", chain, cstar)};
}

Outcome ac6() {
  std::mt19937_64 rng(6);
  int violations = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  for (const auto& name : kSpecs) {
    const auto spec = load(name);
    for (int trial = 0; trial < 1000; ++trial) {
      auto f = AlgebraElement::random(spec.groupoid, rng);
      f -= restrict_to_units(f);
      for (const auto& [p, k, n] : {std::tuple{0.5, 1, 1.0}, std::tuple{1.0, 2, 2.0}}) {
        const auto r = sobolev_bound_check(spec.length, f, k, p, n);
        if (!r.holds) ++violations;
        min_slack = std::min(min_slack, r.slack);
      }
    }
  }
  return {violations == 0, fmt("violations=%d min slack=%.6f", violations, min_slack)};
}

Outcome ac7() {
  const auto start = Clock::now();
  const int k = 1;
  const double p = 0.5, n = 1.0;
  bool ok = true;
  double worst_ratio = 0.0;
  std::string detail;
  for (const auto& name : kSpecs) {
    const auto spec = load(name);
    const double c =
        empirical_rd_constant(spec.length, {.p = p, .samples = 10'000, .seed = 42, .threads = worker_threads()})
            .empirical_c;
    const double bound = diameter_bound(spec.length, k, p, n, c);
    const double doubled = diameter_bound(spec.length, k, p, n, 2.0 * c);
    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const auto mu = random_state(spec.groupoid, rng());
      const auto nu = random_same_fibre_state(mu, rng());
      const auto cert = connes_distance(spec.length, mu, nu, {.k = k});
      if (cert.status != DistanceStatus::Converged) ok = false;
      worst = std::max(worst, cert.upper);
    }
    ok = ok && worst <= bound + 1e-6 && worst <= doubled + 1e-6;
    worst_ratio = std::max(worst_ratio, worst / bound);
    detail += fmt(" %s:%.3f/%.3f", name.c_str(), worst, bound);
  }
  const double elapsed = seconds_since(start);
  ok = ok && elapsed < 300.0;
  return {ok, fmt("max distance/bound=%.3f time=%.1fs;", worst_ratio, elapsed) + detail};
}

Outcome ac8() {
  int instances = 0, failures = 0;
  double worst = 0.0;
  for (const auto& name : kSpecs) {
    const auto spec = load(name);
    if (SelfAdjointParameterization(spec.groupoid).dimension() > 8) continue;
    std::mt19937_64 rng(8);
    for (int pair = 0; pair < 2; ++pair) {
      const auto mu = random_state(spec.groupoid, rng());
      const auto nu = random_same_fibre_state(mu, rng());
      for (int k = 1; k <= 3; ++k) {
        const auto cert = connes_distance(spec.length, mu, nu, {.k = k});
        const double brute = brute_force_distance(
            spec.length, mu, nu, {.k = k, .samples = 1'000'000, .seed = rng(), .threads = worker_threads()});
        const double diff = std::abs(cert.lower - brute);
        const double allowed = std::max(1e-3, 0.05 * cert.lower);
        ++instances;
        if (cert.status != DistanceStatus::Converged || diff > allowed) ++failures;
        worst = std::max(worst, diff / allowed);
      }
    }
  }
  return {failures == 0 && instances > 0,
          fmt("%d instances, %d outside tolerance, worst |diff|/allowed=%.3f", instances, failures, worst)};
}

Outcome ac9() {
  const auto spec = load("z4_rotation");
  const auto rho = random_state(spec.groupoid, 9);
  const auto other = random_same_fibre_state(rho, 10);
  double prev = std::numeric_limits<double>::infinity();
  bool decreasing = true;
  double last = 0.0;
  std::string trail;
  for (int j = 0; j <= 10; ++j) {
    const double t = std::ldexp(1.0, -j);
    const auto cert = connes_distance(spec.length, mix(other, rho, t), rho, {.k = 2});
    if (cert.status != DistanceStatus::Converged || cert.upper > prev) decreasing = false;
    prev = cert.upper;
    last = cert.upper;
    if (j % 5 == 0) trail += fmt(" t=2^-%d:%.3e", j, cert.upper);
  }
  return {decreasing && last < 1e-3, fmt("decreasing=%s", decreasing ? "yes" : "no") + trail};
}

Outcome ac10() {
  bool ok = true;
  std::string detail;
  for (const auto& name : {"z2_swap", "s3_natural"}) {
    app::RunConfig c;
    c.command = "verify";
    c.spec_path = std::string(GQML_SPEC_DIR) + "/" + name + ".json";
    c.seed = 42;
    c.no_cache = true;
    const auto a = app::run(c);
    const auto b = app::run(c);
    const bool same = a.output == b.output && a.exit_code == b.exit_code;
    ok = ok && same && a.exit_code == app::kExitOk;
    detail += fmt(" %s: identical=%s exit=%d bytes=%zu", name, same ? "yes" : "no", a.exit_code, a.output.size());
  }
  return {ok, detail.substr(1)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1 character distance on Z/2", ac1},      {"AC2 adjointness of Delta^k", ac2},
      {"AC3 kernel of L^k", ac3},                  {"AC4 cross-fibre infinity", ac4},
      {"AC5 norm chain and C* identity", ac5},     {"AC6 Sobolev bound by alpha L^k", ac6},
      {"AC7 finite diameter bound", ac7},          {"AC8 brute-force oracle agreement", ac8},
      {"AC9 weak* path consistency", ac9},         {"AC10 verify determinism", ac10},
  };
  int failed = 0;
  for (const auto& [label, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", label, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

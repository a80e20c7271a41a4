#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "gqml/errors.hpp"
#include "gqml/metric.hpp"
#include "gqml/rapid_decay.hpp"
#include "support.hpp"

namespace gqml {
namespace {

using testing::Z2Point;

TEST(RdRatio, Examples) {
  Z2Point z;
  EXPECT_NEAR(rd_ratio(z.length, unit_element(z.G), 1.0), 1.0, 1e-14);
  EXPECT_NEAR(rd_ratio(z.length, z.element(1.0, 2.0), 1.0), 3.0 / std::sqrt(17.0), 1e-14);
  try {
    rd_ratio(z.length, AlgebraElement(z.G), 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroElement);
  }
  EXPECT_THROW(rd_ratio(z.length, unit_element(z.G), 0.0), Error);
}

TEST(RdRatio, DeltasAndScaleInvariance) {
  std::mt19937_64 rng(113);
  for (const auto& name : testing::shipped_specs()) {
    const auto spec = testing::load_spec(name);
    const auto& G = spec.groupoid;
    for (int i = 0; i < G.size(); ++i) {
      const Arrow a = G.arrow(i);
      for (double p : {0.5, 1.0, 2.0}) {
        EXPECT_NEAR(rd_ratio(spec.length, AlgebraElement::delta(G, a), p), std::pow(1.0 + spec.length(a), -p),
                    1e-13) << name;
      }
    }
    const auto f = AlgebraElement::random(G, rng);
    const double r = rd_ratio(spec.length, f, 0.5);
    for (double t : {1e-3, 0.7, 250.0}) EXPECT_NEAR(rd_ratio(spec.length, t * f, 0.5), r, 1e-12 * r);
    EXPECT_NEAR(rd_ratio(spec.length, Complex(0.0, 2.0) * f, 0.5), r, 1e-12 * r);
  }
}

TEST(Truncate, BallExamples) {
  const auto spec = testing::load_spec("z4_rotation");
  const auto& G = spec.groupoid;
  AlgebraElement ones(G);
  for (int i = 0; i < G.size(); ++i) ones.flat(i) = 1.0;
  const auto t1 = truncate(spec.length, ones, 1.0);
  for (int g = 0; g < G.order(); ++g) {
    for (int x = 0; x < G.space_size(); ++x) EXPECT_EQ(t1(g, x), Complex(g == 2 ? 0.0 : 1.0));
  }
  std::mt19937_64 rng(127);
  const auto f = AlgebraElement::random(G, rng);
  EXPECT_LE(truncate(spec.length, f, 0.0).max_abs_diff(restrict_to_units(f)), 0.0);
  EXPECT_LE(truncate(spec.length, f, spec.length.max_value()).max_abs_diff(f), 0.0);
}

TEST(Truncate, IdempotentAndTailsMonotone) {
  std::mt19937_64 rng(131);
  for (const auto& name : testing::shipped_specs()) {
    const auto spec = testing::load_spec(name);
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = AlgebraElement::random(spec.groupoid, rng);
      double prev = std::numeric_limits<double>::infinity();
      for (double n = 0.0; n <= spec.length.max_value() + 0.5; n += 0.5) {
        const auto t = truncate(spec.length, f, n);
        EXPECT_LE(truncate(spec.length, t, n).max_abs_diff(t), 0.0);
        const double tail = tail_norm(spec.length, f, n);
        EXPECT_NEAR(tail, reduced_norm(f - t), 1e-15);
        // Observed, not a theorem: see the notes on tail monotonicity.
        EXPECT_LE(tail, prev + 1e-12) << name << " n=" << n;
        prev = tail;
      }
      EXPECT_EQ(tail_norm(spec.length, f, spec.length.max_value()), 0.0);
    }
  }
}

TEST(Truncate, DeltaOutsideTheBallKeepsItsNorm) {
  const auto spec = testing::load_spec("z4_point");
  const auto d = AlgebraElement::delta(spec.groupoid, {2, 0}, Complex(0.0, 3.0));
  EXPECT_NEAR(tail_norm(spec.length, d, 1.0), 3.0, 1e-14);
  EXPECT_EQ(tail_norm(spec.length, d, 2.0), 0.0);
}

TEST(EmpiricalRd, ReportInvariants) {
  for (const auto& name : testing::shipped_specs()) {
    const auto spec = testing::load_spec(name);
    const auto& G = spec.groupoid;
    const auto report = empirical_rd_constant(spec.length, {.p = 0.5, .samples = 300, .seed = 7});
    EXPECT_EQ(report.p, 0.5);
    EXPECT_EQ(report.sample_count, 300 + 1 + G.size());
    EXPECT_GE(report.empirical_c, 1.0) << name;
    EXPECT_GE(report.empirical_c, report.sampled_c);
    EXPECT_NEAR(rd_ratio(spec.length, report.argmax, 0.5), report.empirical_c, 1e-12 * report.empirical_c);
    ASSERT_FALSE(report.tail_table.empty());
    EXPECT_EQ(report.tail_table.front().n, 0.0);
    EXPECT_EQ(report.tail_table.back().n, spec.length.max_value());
    EXPECT_EQ(report.tail_table.back().tail, 0.0);
    for (std::size_t i = 1; i < report.tail_table.size(); ++i) {
      EXPECT_LT(report.tail_table[i - 1].n, report.tail_table[i].n);
      EXPECT_LE(report.tail_table[i].tail, report.tail_table[i - 1].tail + 1e-12) << name;
    }
    // regression guard: the constant dominates fresh random elements
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 50; ++trial) {
      const auto f = AlgebraElement::random(G, rng);
      EXPECT_LE(rd_ratio(spec.length, f, 0.5), report.empirical_c * (1.0 + 1e-9)) << name;
    }
  }
}

TEST(EmpiricalRd, Z2ConstantIsExact) {
  // On ℤ/2⋉pt with p = ½: maximise |a|+|b| over |a|² + 2|b|² = 1, giving √(3/2).
  Z2Point z;
  const auto report = empirical_rd_constant(z.length, {.p = 0.5, .samples = 2000, .seed = 3});
  EXPECT_NEAR(report.empirical_c, std::sqrt(1.5), 1e-6);
  EXPECT_LE(report.empirical_c, std::sqrt(1.5) + 1e-12);
}

TEST(EmpiricalRd, DeterministicForSeedAndThreads) {
  const auto spec = testing::load_spec("s3_natural");
  const auto a = empirical_rd_constant(spec.length, {.p = 1.0, .samples = 400, .seed = 5, .threads = 1});
  const auto b = empirical_rd_constant(spec.length, {.p = 1.0, .samples = 400, .seed = 5, .threads = 3});
  EXPECT_EQ(a.empirical_c, b.empirical_c);
  EXPECT_EQ(a.sampled_c, b.sampled_c);
  EXPECT_LE(a.argmax.max_abs_diff(b.argmax), 0.0);
  ASSERT_EQ(a.tail_table.size(), b.tail_table.size());
  for (std::size_t i = 0; i < a.tail_table.size(); ++i) EXPECT_EQ(a.tail_table[i].tail, b.tail_table[i].tail);
}

TEST(EmpiricalRd, RejectsBadOptions) {
  Z2Point z;
  EXPECT_THROW(empirical_rd_constant(z.length, {.p = 0.0}), Error);
  EXPECT_THROW(empirical_rd_constant(z.length, {.samples = 0}), Error);
}

TEST(EmpiricalRd, TruncationChainOnTheLipschitzBall) {
  // For f with Lᵏ ≤ 1 and zero on the units:
  //   ‖fχ_n‖_∞ ≤ ‖f‖_∞ ≤ ‖f‖_red ≤ C‖f‖_{2,p,ℓ} ≤ Cα.
  std::mt19937_64 rng(137);
  const int k = 1;
  const double p = 0.5, n = 1.0;
  for (const auto& name : testing::shipped_specs()) {
    const auto spec = testing::load_spec(name);
    const double c = empirical_rd_constant(spec.length, {.p = p, .samples = 2000, .seed = 11}).empirical_c;
    const double alpha = alpha_constant(spec.length, k, p, n);
    for (int trial = 0; trial < 50; ++trial) {
      auto f = testing::random_unit_killed(spec.groupoid, rng);
      f *= 1.0 / lipschitz_seminorm(spec.length, f, k);
      const double sup = sup_norm(f);
      const double red = reduced_norm(f);
      const double sob = sobolev_norm(spec.length, f, p);
      EXPECT_LE(sup_norm(truncate(spec.length, f, n)), sup);
      EXPECT_LE(sup, red + 1e-12);
      EXPECT_LE(red, c * sob * (1.0 + 1e-9)) << name;
      EXPECT_LE(c * sob, c * alpha * (1.0 + 1e-9)) << name;
    }
  }
}

}  // namespace
}  // namespace gqml

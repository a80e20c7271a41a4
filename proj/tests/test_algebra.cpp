#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "gqml/algebra.hpp"
#include "gqml/errors.hpp"
#include "support.hpp"

namespace gqml {
namespace {

using testing::Z2Point;

constexpr double kTight = 1e-12;

TEST(Algebra, UnitElementOnZ2) {
  Z2Point z;
  const auto u = unit_element(z.G);
  EXPECT_EQ(u(0, 0), Complex(1.0));
  EXPECT_EQ(u(1, 0), Complex(0.0));
  EXPECT_NEAR(reduced_norm(u), 1.0, kTight);
  EXPECT_NEAR(i_norm(u), 1.0, kTight);
  EXPECT_NEAR(module_norm(u), 1.0, kTight);
}

TEST(Algebra, ConvolutionExampleOnZ2) {
  Z2Point z;
  const auto f = z.element(1.0, 2.0);
  const auto ff = convolve(f, f);
  EXPECT_NEAR(std::abs(ff(0, 0) - 5.0), 0.0, kTight);
  EXPECT_NEAR(std::abs(ff(1, 0) - 4.0), 0.0, kTight);
}

TEST(Algebra, NormsOnZ2Example) {
  Z2Point z;
  const auto f = z.element(1.0, 2.0);
  EXPECT_NEAR(reduced_norm(f), 3.0, kTight);
  EXPECT_NEAR(i_norm(f), 3.0, kTight);
  EXPECT_NEAR(module_norm(f), std::sqrt(5.0), kTight);
  EXPECT_NEAR(sup_norm(f), 2.0, kTight);
  EXPECT_NEAR(sobolev_norm(z.length, f, 1.0, SobolevSide::Source), std::sqrt(17.0), kTight);
  EXPECT_NEAR(sobolev_norm(z.length, f, 1.0, SobolevSide::Range), std::sqrt(17.0), kTight);
  EXPECT_NEAR(sobolev_norm(z.length, f, 1.0), std::sqrt(17.0), kTight);
  const auto r = restrict_to_units(f);
  EXPECT_EQ(r(0, 0), Complex(1.0));
  EXPECT_EQ(r(1, 0), Complex(0.0));
}

TEST(Algebra, FibreMatrixOnZ2) {
  Z2Point z;
  const auto m = fibre_matrix(z.element(Complex(0.5, 1.0), 3.0), 0).matrix;
  ComplexMatrix expected(2, 2);
  expected << Complex(0.5, 1.0), 3.0, 3.0, Complex(0.5, 1.0);
  EXPECT_LE(testing::max_abs(m - expected), kTight);
  EXPECT_THROW(fibre_matrix(unit_element(z.G), 1), Error);
}

TEST(Algebra, DeltaProductsFollowComposition) {
  for (const auto& name : {"z2_swap", "s3_natural"}) {
    const auto G = testing::load_spec(name).groupoid;
    for (int g = 0; g < G.order(); ++g) {
      for (int h = 0; h < G.order(); ++h) {
        for (int y = 0; y < G.space_size(); ++y) {
          const auto lhs = AlgebraElement::delta(G, {g, G.act(h, y)});
          const auto rhs = AlgebraElement::delta(G, {h, y});
          const auto expected = AlgebraElement::delta(G, {G.group().multiply(g, h), y});
          EXPECT_LE(convolve(lhs, rhs).max_abs_diff(expected), kTight);
        }
      }
    }
  }
}

TEST(Algebra, InvolutionOfSwapDelta) {
  const auto G = testing::z2_swap();
  const auto d = AlgebraElement::delta(G, {1, 0});
  EXPECT_LE(involution(d).max_abs_diff(AlgebraElement::delta(G, {1, 1})), kTight);
  AlgebraElement real_units(G);
  real_units(0, 0) = 2.0;
  real_units(0, 1) = -1.0;
  EXPECT_LE(involution(real_units).max_abs_diff(real_units), kTight);
}

TEST(Algebra, AgreesWithArrowLevelOracles) {
  std::mt19937_64 rng(11);
  for (const auto& name : testing::shipped_specs()) {
    const auto G = testing::load_spec(name).groupoid;
    for (int trial = 0; trial < 10; ++trial) {
      const auto f = AlgebraElement::random(G, rng);
      const auto g = AlgebraElement::random(G, rng);
      EXPECT_LE(convolve(f, g).max_abs_diff(testing::naive_convolve(f, g)), 1e-11) << name;
      EXPECT_LE(involution(f).max_abs_diff(testing::naive_involution(f)), kTight) << name;
      for (int x = 0; x < G.space_size(); ++x) {
        EXPECT_LE(testing::max_abs(fibre_matrix(f, x).matrix - testing::naive_fibre_matrix(f, x)), 0.0);
      }
      const double red = reduced_norm(f);
      EXPECT_NEAR(red, testing::naive_reduced_norm(f), 1e-10 * (1.0 + red)) << name;
    }
  }
}

TEST(Algebra, UnitAssociativityAndAntiMultiplicativeInvolution) {
  std::mt19937_64 rng(5);
  for (const auto& name : testing::shipped_specs()) {
    const auto G = testing::load_spec(name).groupoid;
    const auto u = unit_element(G);
    for (int trial = 0; trial < 10; ++trial) {
      const auto f = AlgebraElement::random(G, rng);
      const auto g = AlgebraElement::random(G, rng);
      const auto h = AlgebraElement::random(G, rng);
      EXPECT_LE(convolve(u, f).max_abs_diff(f), kTight);
      EXPECT_LE(convolve(f, u).max_abs_diff(f), kTight);
      const auto left = convolve(convolve(f, g), h);
      const auto right = convolve(f, convolve(g, h));
      EXPECT_LE(left.max_abs_diff(right), 1e-12 * (1.0 + sup_norm(left))) << name;
      EXPECT_LE(involution(involution(f)).max_abs_diff(f), 0.0);
      EXPECT_LE(involution(convolve(f, g)).max_abs_diff(convolve(involution(g), involution(f))), 1e-12);
    }
  }
}

TEST(Algebra, FibreMatricesAreAStarHomomorphism) {
  std::mt19937_64 rng(8);
  for (const auto& name : testing::shipped_specs()) {
    const auto G = testing::load_spec(name).groupoid;
    for (int trial = 0; trial < 5; ++trial) {
      const auto f = AlgebraElement::random(G, rng);
      const auto g = AlgebraElement::random(G, rng);
      const auto fg = convolve(f, g);
      const auto fs = involution(f);
      for (int x = 0; x < G.space_size(); ++x) {
        const ComplexMatrix prod = fibre_matrix(f, x).matrix * fibre_matrix(g, x).matrix;
        EXPECT_LE(testing::max_abs(fibre_matrix(fg, x).matrix - prod), 1e-12 * (1.0 + testing::max_abs(prod)));
        EXPECT_LE(testing::max_abs(fibre_matrix(fs, x).matrix - fibre_matrix(f, x).matrix.adjoint()), 0.0);
      }
    }
  }
}

TEST(Algebra, RegularRepresentationNeverMixesFibres) {
  std::mt19937_64 rng(13);
  for (const auto& name : {"z2_swap", "z4_rotation", "s3_natural"}) {
    const auto G = testing::load_spec(name).groupoid;
    const auto f = AlgebraElement::random(G, rng);
    for (int y = 0; y < G.space_size(); ++y) {
      // ξ supported on the source fibre over y only.
      AlgebraElement xi(G);
      for (int g = 0; g < G.order(); ++g) xi(g, y) = Complex(1.0 + g, -0.5 * g);
      const auto out = testing::naive_convolve(f, xi);
      for (int g = 0; g < G.order(); ++g) {
        for (int x = 0; x < G.space_size(); ++x) {
          if (x != y) EXPECT_EQ(out(g, x), Complex(0.0));
        }
      }
      EXPECT_LE(apply_regular(f, xi).max_abs_diff(out), 1e-12);
    }
  }
}

TEST(Algebra, ModuleInnerProductAdjointness) {
  // ⟨⟨λ(f)ξ, η⟩⟩ = ⟨⟨ξ, λ(f*)η⟩⟩ pointwise on X.
  std::mt19937_64 rng(17);
  const auto G = testing::load_spec("s3_natural").groupoid;
  const auto f = AlgebraElement::random(G, rng);
  const auto xi = AlgebraElement::random(G, rng);
  const auto eta = AlgebraElement::random(G, rng);
  const auto lhs = module_inner_product(convolve(f, xi), eta);
  const auto rhs = module_inner_product(xi, convolve(involution(f), eta));
  ASSERT_EQ(lhs.size(), rhs.size());
  for (std::size_t x = 0; x < lhs.size(); ++x) EXPECT_LE(std::abs(lhs[x] - rhs[x]), 1e-10);
  const auto self = module_inner_product(xi, xi);
  double best = 0.0;
  for (auto v : self) best = std::max(best, v.real());
  EXPECT_NEAR(std::sqrt(best), module_norm(xi), 1e-12);
}

TEST(Algebra, NormChainAndCStarIdentity) {
  std::mt19937_64 rng(19);
  for (const auto& name : testing::shipped_specs()) {
    const auto G = testing::load_spec(name).groupoid;
    for (int trial = 0; trial < 50; ++trial) {
      auto f = AlgebraElement::random(G, rng);
      if (trial % 5 == 0) f = testing::random_unit_killed(G, rng);
      const double sup = sup_norm(f);
      const double red = reduced_norm(f);
      const double inorm = i_norm(f);
      EXPECT_LE(sup, red + kTight) << name;
      EXPECT_LE(red, inorm + kTight) << name;
      EXPECT_LE(module_norm(f), red + 1e-12) << name;
      const double cstar = reduced_norm(convolve(involution(f), f));
      EXPECT_LE(std::abs(cstar - red * red), 1e-9 * (1.0 + red * red)) << name;
    }
  }
}

TEST(Algebra, INormByRangeAndSourceSums) {
  std::mt19937_64 rng(23);
  for (const auto& name : testing::shipped_specs()) {
    const auto G = testing::load_spec(name).groupoid;
    const auto f = AlgebraElement::random(G, rng);
    std::vector<double> by_source(G.space_size(), 0.0), by_range(G.space_size(), 0.0);
    for (int i = 0; i < G.size(); ++i) {
      const Arrow a = G.arrow(i);
      by_source[G.source(a)] += std::abs(f[a]);
      by_range[G.range(a)] += std::abs(f[a]);
    }
    double expected = 0.0;
    for (int x = 0; x < G.space_size(); ++x) expected = std::max({expected, by_source[x], by_range[x]});
    EXPECT_NEAR(i_norm(f), expected, 1e-12 * expected) << name;
  }
}

TEST(Algebra, SobolevDefinitionAndSmallExponentLimit) {
  std::mt19937_64 rng(29);
  for (const auto& name : testing::shipped_specs()) {
    const auto spec = testing::load_spec(name);
    const auto& G = spec.groupoid;
    const auto f = AlgebraElement::random(G, rng);
    const double p = 0.75;
    std::vector<double> s(G.space_size(), 0.0), r(G.space_size(), 0.0);
    for (int i = 0; i < G.size(); ++i) {
      const Arrow a = G.arrow(i);
      const double w = std::pow(1.0 + spec.length(a), 2.0 * p) * std::norm(f[a]);
      s[G.source(a)] += w;
      r[G.range(a)] += w;  // γ ∈ G^x ⇔ γ⁻¹ ∈ G_x, and ℓ(γ⁻¹) = ℓ(γ)
    }
    const double s_side = std::sqrt(*std::max_element(s.begin(), s.end()));
    const double r_side = std::sqrt(*std::max_element(r.begin(), r.end()));
    EXPECT_NEAR(sobolev_norm(spec.length, f, p, SobolevSide::Source), s_side, 1e-12 * s_side);
    EXPECT_NEAR(sobolev_norm(spec.length, f, p, SobolevSide::Range), r_side, 1e-12 * r_side);
    EXPECT_NEAR(sobolev_norm(spec.length, f, p), std::max(s_side, r_side), 1e-12 * s_side);

    const double tiny = sobolev_norm(spec.length, f, 1e-6);
    const double module_max = std::max(module_norm(f), module_norm(involution(f)));
    EXPECT_LE(std::abs(tiny - module_max), 1e-4) << name;
  }
}

TEST(Algebra, SobolevRejectsBadExponent) {
  Z2Point z;
  const auto f = z.element(1.0, 1.0);
  EXPECT_THROW(sobolev_norm(z.length, f, 0.0), Error);
  EXPECT_THROW(sobolev_norm(z.length, f, -1.0), Error);
}

TEST(Algebra, MismatchedGroupoidsAreRejected) {
  Z2Point z;
  const auto other = testing::z2_swap();
  try {
    convolve(unit_element(z.G), unit_element(other));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::GroupoidMismatch);
  }
}

TEST(QuotientNorm, OneParameterOracleOnZ2) {
  Z2Point z;
  for (double b : {0.0, 0.3, -1.7, 4.0}) {
    const auto q = quotient_norm(z.element(0.0, b));
    EXPECT_TRUE(q.converged);
    EXPECT_NEAR(q.value, std::abs(b), 1e-8);
  }
  // Real grid over φ for f = (1, 2i).
  const auto q = quotient_norm(z.element(1.0, Complex(0.0, 2.0)));
  double grid = 1e300;
  for (int i = -4000; i <= 4000; ++i) {
    const double t = i * 1e-3;
    grid = std::min(grid, reduced_norm(z.element(Complex(1.0 - t, 0.0), Complex(0.0, 2.0))));
  }
  EXPECT_NEAR(q.value, grid, 1e-6);
}

TEST(QuotientNorm, UnitSupportedIsZero) {
  std::mt19937_64 rng(31);
  const auto G = testing::load_spec("z3_rotation").groupoid;
  const auto q = quotient_norm(testing::random_unit_supported(G, rng));
  EXPECT_LE(q.value, 1e-8);
}

TEST(QuotientNorm, BracketedByFeasiblePointsAndColumns) {
  std::mt19937_64 rng(37);
  for (const auto& name : testing::shipped_specs()) {
    const auto G = testing::load_spec(name).groupoid;
    for (int trial = 0; trial < 5; ++trial) {
      const auto f = AlgebraElement::random(G, rng);
      const auto q = quotient_norm(f);
      EXPECT_TRUE(q.converged) << name;
      EXPECT_LE(q.lower, q.upper + 1e-12);
      EXPECT_LE(q.upper - q.lower, 1e-8 + 1e-12 * q.upper);
      const auto killed = f - restrict_to_units(f);
      EXPECT_LE(q.value, reduced_norm(killed) + 1e-12);
      // ‖f − φ‖ ≥ ‖(f − φ)(·, x) off the unit‖₂ for every φ ∈ C(X).
      double column = 0.0;
      for (int x = 0; x < G.space_size(); ++x) {
        double s = 0.0;
        for (int g = 0; g < G.order(); ++g) {
          if (g != G.identity()) s += std::norm(f(g, x));
        }
        column = std::max(column, std::sqrt(s));
      }
      EXPECT_GE(q.value, column - 1e-9) << name;
      // Random competitors never beat the reported minimum by more than the gap.
      for (int c = 0; c < 20; ++c) {
        AlgebraElement phi(G);
        const auto noise = AlgebraElement::random(G, rng);
        for (int x = 0; x < G.space_size(); ++x) phi(G.identity(), x) = f(G.identity(), x) + 0.3 * noise(0, x);
        EXPECT_GE(reduced_norm(f - phi), q.lower - 1e-9);
      }
      // The minimiser is attained.
      AlgebraElement phi(G);
      for (int x = 0; x < G.space_size(); ++x) phi(G.identity(), x) = q.minimizer[x];
      EXPECT_NEAR(reduced_norm(f - phi), q.value, 1e-9 * (1.0 + q.value));
    }
  }
}

}  // namespace
}  // namespace gqml

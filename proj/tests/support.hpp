#pragma once

// Independent oracles for the unit tests. Everything here is computed from
// the arrow-level definitions (compose, inverse) rather than the library's
// precomputed fibre tables, and norms come from Eigen's SVD rather than the
// M^H M eigenvalue route the library uses.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gqml/algebra.hpp"
#include "gqml/dirac.hpp"
#include "gqml/groupoid.hpp"
#include "gqml/spec_io.hpp"
#include "gqml/state.hpp"

namespace gqml::testing {

inline GroupoidSpec load_spec(const std::string& name) {
  return parse_groupoid_spec(read_json_file(std::string(GQML_SPEC_DIR) + "/" + name + ".json"));
}

inline const std::vector<std::string>& shipped_specs() {
  static const std::vector<std::string> names{"z2_point",  "z2_swap",    "z3_point",
                                              "z3_rotation", "klein_point", "z4_point",
                                              "z4_rotation", "s3_point",   "s3_natural"};
  return names;
}

// ℤ/2 acting trivially on one point, ℓ(a) = 1.
struct Z2Point {
  TransformationGroupoid G = TransformationGroupoid::group_only(FiniteGroup::cyclic(2));
  LengthFunction length = word_length(G, {1});

  AlgebraElement element(Complex e, Complex a) const {
    AlgebraElement f(G);
    f(0, 0) = e;
    f(1, 0) = a;
    return f;
  }
  State character(double sign) const {
    ComplexVector psi(2);
    psi << 1.0 / std::sqrt(2.0), sign / std::sqrt(2.0);
    return vector_state(G, 0, psi);
  }
};

// ℤ/2 swapping the two points {0, 1}.
inline TransformationGroupoid z2_swap() {
  return TransformationGroupoid(FiniteGroup::cyclic(2), 2, Table{{0, 1}, {1, 0}});
}

inline AlgebraElement naive_convolve(const AlgebraElement& f, const AlgebraElement& xi) {
  const auto& G = f.groupoid();
  AlgebraElement out(G);
  for (int i = 0; i < G.size(); ++i) {
    for (int j = 0; j < G.size(); ++j) {
      const Arrow a = G.arrow(i);
      const Arrow b = G.arrow(j);
      if (!G.composable(a, b)) continue;
      out[G.compose(a, b)] += f[a] * xi[b];
    }
  }
  return out;
}

inline AlgebraElement naive_involution(const AlgebraElement& f) {
  const auto& G = f.groupoid();
  AlgebraElement out(G);
  for (int i = 0; i < G.size(); ++i) out.flat(i) = std::conj(f[G.inverse(G.arrow(i))]);
  return out;
}

// Row g, column h: the arrow γ with γ·(h,x) = (g,x), i.e. (g,x)(h,x)⁻¹.
inline ComplexMatrix naive_fibre_matrix(const AlgebraElement& f, int x) {
  const auto& G = f.groupoid();
  const int n = G.order();
  ComplexMatrix m(n, n);
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) m(g, h) = f[G.compose({g, x}, G.inverse({h, x}))];
  }
  return m;
}

inline double svd_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<ComplexMatrix>(m).singularValues()(0);
}

inline double naive_reduced_norm(const AlgebraElement& f) {
  double best = 0.0;
  for (int x = 0; x < f.groupoid().space_size(); ++x) best = std::max(best, svd_norm(naive_fibre_matrix(f, x)));
  return best;
}

inline ComplexMatrix length_diagonal(const LengthFunction& length, int x) {
  const int n = length.groupoid().order();
  ComplexMatrix d = ComplexMatrix::Zero(n, n);
  for (int g = 0; g < n; ++g) d(g, g) = length.at(g, x);
  return d;
}

// Δᵏ by k nested commutators with the diagonal operator M_ℓ.
inline ComplexMatrix commutator_delta(const LengthFunction& length, const AlgebraElement& f, int x, int k) {
  const ComplexMatrix d = length_diagonal(length, x);
  ComplexMatrix m = naive_fibre_matrix(f, x);
  for (int i = 0; i < k; ++i) m = (d * m - m * d).eval();
  return m;
}

inline double naive_lipschitz(const LengthFunction& length, const AlgebraElement& f, int k) {
  double best = 0.0;
  for (int x = 0; x < length.groupoid().space_size(); ++x) {
    best = std::max(best, svd_norm(commutator_delta(length, f, x, k)));
  }
  return best;
}

inline double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline AlgebraElement random_unit_supported(const TransformationGroupoid& G, std::mt19937_64& rng) {
  return restrict_to_units(AlgebraElement::random(G, rng));
}

inline AlgebraElement random_unit_killed(const TransformationGroupoid& G, std::mt19937_64& rng) {
  AlgebraElement f = AlgebraElement::random(G, rng);
  return f - restrict_to_units(f);
}

}  // namespace gqml::testing

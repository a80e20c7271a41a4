#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gqml/groupoid.hpp"
#include "gqml/linalg.hpp"

namespace gqml {

/// A complex function on the arrows Γ×X, stored densely in flat order
/// index = g·|X| + x. Every element of C_c(G) for finite G has this form.
class AlgebraElement {
 public:
  explicit AlgebraElement(TransformationGroupoid groupoid);
  AlgebraElement(TransformationGroupoid groupoid, std::vector<Complex> values);

  static AlgebraElement zero(const TransformationGroupoid& groupoid);
  static AlgebraElement delta(const TransformationGroupoid& groupoid, Arrow a, Complex value = 1.0);
  /// Entries with independent standard complex Gaussian real and imaginary parts.
  static AlgebraElement random(const TransformationGroupoid& groupoid, std::mt19937_64& rng);

  const TransformationGroupoid& groupoid() const noexcept { return groupoid_; }
  int size() const noexcept { return static_cast<int>(values_.size()); }

  Complex& operator()(int g, int x) { return values_[groupoid_.index({g, x})]; }
  Complex operator()(int g, int x) const { return values_[groupoid_.index({g, x})]; }
  Complex& operator[](Arrow a) { return values_[groupoid_.index(a)]; }
  Complex operator[](Arrow a) const { return values_[groupoid_.index(a)]; }
  Complex& flat(int i) { return values_[i]; }
  Complex flat(int i) const { return values_[i]; }
  const std::vector<Complex>& values() const noexcept { return values_; }

  AlgebraElement& operator+=(const AlgebraElement& rhs);
  AlgebraElement& operator-=(const AlgebraElement& rhs);
  AlgebraElement& operator*=(Complex s);

  friend AlgebraElement operator+(AlgebraElement lhs, const AlgebraElement& rhs) { return lhs += rhs; }
  friend AlgebraElement operator-(AlgebraElement lhs, const AlgebraElement& rhs) { return lhs -= rhs; }
  friend AlgebraElement operator*(Complex s, AlgebraElement f) { return f *= s; }
  friend AlgebraElement operator*(AlgebraElement f, Complex s) { return f *= s; }

  /// Largest entrywise |difference|; throws GroupoidMismatch.
  double max_abs_diff(const AlgebraElement& other) const;

 private:
  TransformationGroupoid groupoid_;
  std::vector<Complex> values_;
};

/// Throws Error{GroupoidMismatch} unless both elements live on the same groupoid.
void require_same_groupoid(const AlgebraElement& a, const AlgebraElement& b);

/// Matrix of λ(f) on ℓ²(G_x) in the basis (g, x), g in index order:
/// entry[g][h] = f(g h⁻¹, h·x).
struct FibreMatrix {
  int x = 0;
  ComplexMatrix matrix;
};

/// 𝓔: 1 on the units, 0 elsewhere.
AlgebraElement unit_element(const TransformationGroupoid& groupoid);

/// (f ∗ ξ)(g, x) = Σ_h f(g h⁻¹, h·x) ξ(h, x).
AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& xi);

/// f*(g, x) = conj f(g⁻¹, g·x).
AlgebraElement involution(const AlgebraElement& f);

/// Throws Error{PointOutOfRange}.
FibreMatrix fibre_matrix(const AlgebraElement& f, int x);

/// Coordinates of ξ restricted to the source fibre over x.
ComplexVector fibre_vector(const AlgebraElement& xi, int x);

/// Applies λ(f) to ξ through the fibre matrices, one fibre at a time.
AlgebraElement apply_regular(const AlgebraElement& f, const AlgebraElement& xi);

/// ⟨⟨ξ, η⟩⟩(x) = Σ_{γ∈G_x} conj ξ(γ) η(γ), one value per point of X.
std::vector<Complex> module_inner_product(const AlgebraElement& xi, const AlgebraElement& eta);

/// ‖λ(f)‖: max over x of the spectral norm of the fibre matrix.
double reduced_norm(const AlgebraElement& f);

double i_norm(const AlgebraElement& f);

/// Hilbert-module norm: max over x of the ℓ² norm of f on G_x.
double module_norm(const AlgebraElement& f);

double sup_norm(const AlgebraElement& f);

/// Keeps the unit entries f(e, x) and zeroes the rest.
AlgebraElement restrict_to_units(const AlgebraElement& f);

enum class SobolevSide { Source, Range, Max };

/// Weighted ℓ² norms with weights (1 + ℓ)^p. Throws Error{BadExponent} for
/// p ≤ 0 and GroupoidMismatch when ℓ lives elsewhere.
double sobolev_norm(const LengthFunction& length, const AlgebraElement& f, double p,
                    SobolevSide side = SobolevSide::Max);

struct QuotientNormOptions {
  double tol = 1e-8;
  int budget = 2000;
};

/// inf over φ ∈ C(X) of ‖f − φ‖_red, bracketed by a cutting-plane lower bound
/// and the best evaluated point.
struct QuotientNormResult {
  double value = 0.0;  // upper bound; the reported norm
  double lower = 0.0;
  double upper = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<Complex> minimizer;  // φ(x)
};

QuotientNormResult quotient_norm(const AlgebraElement& f, const QuotientNormOptions& options = {});

}  // namespace gqml

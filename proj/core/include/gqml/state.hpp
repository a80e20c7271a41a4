#pragma once

#include <cstdint>
#include <vector>

#include "gqml/algebra.hpp"
#include "gqml/groupoid.hpp"
#include "gqml/linalg.hpp"

namespace gqml {

inline constexpr double kStateTolerance = 1e-10;
inline constexpr double kDefaultFibreTolerance = 1e-8;

/// A state of the block-sum algebra ⊕_x M_|Γ| restricted to the image of λ:
/// ω(f) = Σ_x tr(ρ_x · fibre_matrix(f, x)).
class State {
 public:
  /// Validates Hermitian PSD blocks (min eigenvalue ≥ −1e-10) with total trace
  /// 1 ± 1e-10. Throws Error{ShapeMismatch | InvalidState}.
  State(TransformationGroupoid groupoid, std::vector<ComplexMatrix> blocks);

  const TransformationGroupoid& groupoid() const noexcept { return groupoid_; }
  const std::vector<ComplexMatrix>& blocks() const noexcept { return blocks_; }
  const ComplexMatrix& block(int x) const { return blocks_[x]; }

 private:
  TransformationGroupoid groupoid_;
  std::vector<ComplexMatrix> blocks_;
};

/// Probability vector η over X.
struct FibreMeasure {
  std::vector<double> weights;
};

/// Throws Error{ShapeMismatch} when the state and element disagree on the groupoid.
Complex evaluate(const State& state, const AlgebraElement& f);

/// Density of ω against the arrows: ω(f) = Σ_γ w(γ) f(γ).
AlgebraElement state_density(const State& state);

/// ρ_x = ψψ†. Throws Error{NotUnitVector | PointOutOfRange | ShapeMismatch}.
State vector_state(const TransformationGroupoid& groupoid, int x, const ComplexVector& psi);

/// η(y) = Σ_{(x,g) : g·x = y} ρ_x[g][g].
FibreMeasure fibre_measure(const State& state);

double fibre_distance(const State& mu, const State& nu);

/// max_y |η_μ(y) − η_ν(y)| ≤ tol.
bool same_fibre(const State& mu, const State& nu, double tol = kDefaultFibreTolerance);

/// ρ_x = G_x G_x† for complex Gaussian G_x, normalised to total trace 1.
State random_state(const TransformationGroupoid& groupoid, std::uint64_t seed);

/// A random state with exactly the same block diagonals as `reference`, hence
/// the same fibre measure: random PSD blocks congruence-scaled by a diagonal
/// matrix. Requires a reference with positive diagonal.
State random_same_fibre_state(const State& reference, std::uint64_t seed);

/// t·μ + (1 − t)·ν for t in [0, 1].
State mix(const State& mu, const State& nu, double t);

}  // namespace gqml

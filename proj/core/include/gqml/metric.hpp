#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "gqml/algebra.hpp"
#include "gqml/groupoid.hpp"
#include "gqml/state.hpp"

namespace gqml {

/// Real coordinates θ for the self-adjoint elements that vanish on the units.
/// Non-unit arrows are grouped into orbits {γ, γ⁻¹} of the involution; a
/// self-inverse arrow carries one real coordinate (f(γ) is real), a proper
/// pair carries Re f(γ) and Im f(γ) with f(γ⁻¹) = conj f(γ).
class SelfAdjointParameterization {
 public:
  explicit SelfAdjointParameterization(TransformationGroupoid groupoid);

  struct Coordinate {
    Arrow arrow;          // representative γ (lowest flat index of its orbit)
    Arrow partner;        // γ⁻¹
    bool imaginary = false;
  };

  int dimension() const noexcept { return static_cast<int>(coordinates_.size()); }
  const std::vector<Coordinate>& coordinates() const noexcept { return coordinates_; }
  const TransformationGroupoid& groupoid() const noexcept { return groupoid_; }

  AlgebraElement element(const Eigen::VectorXd& theta) const;
  /// Coordinates of a self-adjoint element; its unit part is ignored.
  Eigen::VectorXd coordinates_of(const AlgebraElement& f) const;
  /// The vector a with Re Σ_γ w(γ) f_θ(γ) = a·θ.
  Eigen::VectorXd linear_form(const AlgebraElement& weights) const;

 private:
  TransformationGroupoid groupoid_;
  std::vector<Coordinate> coordinates_;
};

enum class DistanceStatus { Converged, BudgetExceeded, Infinite };

std::string_view to_string(DistanceStatus status);

struct DistanceOptions {
  int k = 1;
  double tol = 1e-6;       // stop once upper − lower ≤ tol
  int budget = 2000;       // maximum number of cuts
  double fibre_tol = kDefaultFibreTolerance;
};

/// Bracket on ρ(μ, ν) = sup{|μ(f) − ν(f)| : Lᵏ_ℓ(f) ≤ 1}. For finite results
/// the witness is self-adjoint, zero on the units and has Lᵏ_ℓ ≤ 1 + 1e-9; its
/// value is `lower`. For infinite results `lower = upper = +inf` and the
/// witness is a unit-supported φ with Lᵏ_ℓ(φ) = 0 and (μ − ν)(φ) > 0.
struct DistanceCertificate {
  explicit DistanceCertificate(const TransformationGroupoid& groupoid) : witness(groupoid) {}

  DistanceStatus status = DistanceStatus::Converged;
  double lower = 0.0;
  double upper = 0.0;
  double gap = 0.0;
  AlgebraElement witness;
  int iterations = 0;
  int cuts = 0;
  int k = 1;
  double tol = 0.0;
  FibreMeasure fibre_a;
  FibreMeasure fibre_b;
};

/// Cutting planes on the spectral-norm ball. Throws
/// Error{FibreToleranceAmbiguous} when the fibre measures differ by more than
/// fibre_tol but at most 10·fibre_tol, Error{ShapeMismatch} across groupoids.
/// Budget exhaustion is reported through the status, never thrown.
DistanceCertificate connes_distance(const LengthFunction& length, const State& mu, const State& nu,
                                    const DistanceOptions& options = {});

struct BruteForceOptions {
  int k = 1;
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 7;
  int threads = 1;
  int max_parameters = 8;
};

/// Random-search lower bound on the same supremum: half the samples are
/// global Gaussian directions, half refine the incumbent with shrinking
/// Gaussian steps. Shares nothing with
/// connes_distance beyond the coordinate map: Δᵏ comes from the nested
/// commutator recursion, norms from Hermitian eigenvalues, and the objective
/// from evaluate(). Throws Error{TooManyParameters}.
double brute_force_distance(const LengthFunction& length, const State& mu, const State& nu,
                            const BruteForceOptions& options = {});

/// α = sup_{g ∈ Γ_n∖{e}, x} ((1 + ℓ(g,x)⁻¹)^{2k} + 2^{2p} n^{2p−2k})^{1/2}.
/// Throws Error{EmptyBall} when Γ_n = {e}, InvalidArgument unless k > p > 0
/// and n ≥ 1.
double alpha_constant(const LengthFunction& length, int k, double p, double n);

struct SobolevBoundReport {
  double sobolev = 0.0;     // ‖f‖_{2,p,ℓ}
  double lipschitz = 0.0;   // Lᵏ_ℓ(f)
  double alpha = 0.0;
  double bound = 0.0;       // α · Lᵏ_ℓ(f)
  double slack = 0.0;       // bound − sobolev
  bool holds = false;
};

/// Both sides of ‖f‖_{2,p,ℓ} ≤ α Lᵏ_ℓ(f). Requires f to vanish on the units.
SobolevBoundReport sobolev_bound_check(const LengthFunction& length, const AlgebraElement& f, int k, double p,
                          double n);

/// 2·C·α: a diameter bound for every fibre, valid whenever C is a rapid-decay
/// constant for (ℓ, p).
double diameter_bound(const LengthFunction& length, int k, double p, double n, double rd_constant);

struct MetricAxiomsReport {
  std::vector<std::vector<DistanceCertificate>> distances;  // [i][j], i ≠ j solved
  double max_symmetry_defect = 0.0;   // max |lower_ij − lower_ji|
  double max_triangle_defect = 0.0;   // max upper_ik − lower_ij − lower_jk
  int positivity_violations = 0;
  bool symmetric = true;
  bool triangle = true;
  bool positive = true;
  bool passed() const noexcept { return symmetric && triangle && positive; }
};

/// Pairwise distances among states of one fibre, checked for symmetry
/// (≤ 2·tol), the triangle inequality (upper ≤ lower + lower + 3·tol) and
/// positivity on pairs separated by some off-unit basis element.
MetricAxiomsReport metric_axioms_check(const LengthFunction& length, const std::vector<State>& states,
                                       const DistanceOptions& options = {});

}  // namespace gqml

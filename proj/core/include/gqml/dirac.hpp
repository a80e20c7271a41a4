#pragma once

#include "gqml/algebra.hpp"
#include "gqml/groupoid.hpp"
#include "gqml/linalg.hpp"

namespace gqml {

/// Largest commutator order accepted by delta_matrix and friends. Powers of
/// length differences beyond this overflow quickly for long lengths.
inline constexpr int kDefaultPowerCap = 12;

int power_cap() noexcept;
/// Raises or lowers the cap. Values above kDefaultPowerCap print a warning
/// to stderr.
void set_power_cap(int cap);

/// M_ℓ^power f: pointwise product with ℓ^power.
AlgebraElement m_ell_apply(const LengthFunction& length, const AlgebraElement& f, int power = 1);

/// Δᵏ(f) on the source fibre over x:
/// entry[g][h] = (ℓ(g,x) − ℓ(h,x))ᵏ f(g h⁻¹, h·x).
struct DeltaMatrix {
  int x = 0;
  int k = 1;
  ComplexMatrix matrix;
};

/// Closed-form entries; the nested-commutator recursion is only used in tests.
/// Throws Error{InvalidArgument} for k outside 1..power_cap(),
/// PointOutOfRange and GroupoidMismatch.
DeltaMatrix delta_matrix(const LengthFunction& length, const AlgebraElement& f, int x, int k);

/// Δᵏ(f)(𝓔) = ℓᵏ f.
AlgebraElement apply_to_unit(const LengthFunction& length, const AlgebraElement& f, int k);

/// Lᵏ_ℓ(f) = max_x ‖Δᵏ(f)|_{G_x}‖.
double lipschitz_seminorm(const LengthFunction& length, const AlgebraElement& f, int k);

/// 1e-10 · (1 + ‖f‖_∞).
double default_kernel_tolerance(const AlgebraElement& f);

/// True iff Lᵏ_ℓ(f) ≤ tol.
bool kernel_test(const LengthFunction& length, const AlgebraElement& f, int k, double tol);

/// Entrywise counterpart of kernel_test: max over non-unit arrows of |f| ≤ tol / ℓ_minᵏ.
/// Since Lᵏ_ℓ(f) ≥ ‖Δᵏ(f)(𝓔)‖ ≥ ℓ_minᵏ · max_{γ∉X} |f(γ)|, a positive
/// kernel_test implies a positive syntactic test.
bool syntactic_kernel_test(const LengthFunction& length, const AlgebraElement& f, int k,
                           double tol);

}  // namespace gqml

#pragma once

#include <cstdint>
#include <vector>

#include "gqml/algebra.hpp"
#include "gqml/groupoid.hpp"

namespace gqml {

/// ‖f‖_red / ‖f‖_{2,p,ℓ} with the max-side Sobolev norm.
/// Throws Error{ZeroElement} for f = 0 and Error{BadExponent} for p ≤ 0.
double rd_ratio(const LengthFunction& length, const AlgebraElement& f, double p);

/// f·χ_n: keeps the entries (g, x) with g ∈ Γ_n.
AlgebraElement truncate(const LengthFunction& length, const AlgebraElement& f, double n);

/// ‖f − truncate(f, n)‖_red.
double tail_norm(const LengthFunction& length, const AlgebraElement& f, double n);

struct RdOptions {
  double p = 1.0;
  std::int64_t samples = 10'000;
  std::uint64_t seed = 42;
  int hill_steps = 200;
  int threads = 1;
};

struct TailEntry {
  double n = 0.0;
  double tail = 0.0;  // max over the sample of tail_norm(f, n)
};

struct RdReport {
  explicit RdReport(const TransformationGroupoid& groupoid) : argmax(groupoid) {}

  double p = 0.0;
  std::int64_t sample_count = 0;  // every element the ratio was evaluated on
  double empirical_c = 0.0;       // a lower estimate of the optimal constant
  double sampled_c = 0.0;         // before hill-climbing
  AlgebraElement argmax;
  std::vector<TailEntry> tail_table;  // n over 0 and the distinct values of ℓ
};

/// Maximises rd_ratio over 𝓔, every δ_γ, `samples` seeded complex Gaussians
/// and a hill-climb from the best of those. The climb sweeps the coordinates
/// with complex steps ±s, ±is, halving s after a sweep without improvement.
/// Bit-for-bit deterministic for a fixed seed, whatever the thread count.
RdReport empirical_rd_constant(const LengthFunction& length, const RdOptions& options);

}  // namespace gqml

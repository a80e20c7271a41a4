#include "gqml/dirac.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>

#include "gqml/errors.hpp"

namespace gqml {

namespace {

std::atomic<int> g_power_cap{kDefaultPowerCap};

void require_length_on(const LengthFunction& length, const AlgebraElement& f) {
  if (!length.groupoid().same_as(f.groupoid())) {
    throw Error(ErrorKind::GroupoidMismatch, "length function lives on a different groupoid");
  }
}

void require_order(int k) {
  if (k < 1 || k > power_cap()) {
    throw Error(ErrorKind::InvalidArgument, "commutator order k = " + std::to_string(k) +
                                                " outside 1.." + std::to_string(power_cap()));
  }
}

}  // namespace

int power_cap() noexcept { return g_power_cap.load(); }

void set_power_cap(int cap) {
  if (cap < 1) throw Error(ErrorKind::InvalidArgument, "power cap must be at least 1");
  if (cap > kDefaultPowerCap) {
    std::cerr << "warning: commutator order cap raised to " << cap
              << "; length differences to that power may overflow\n";
  }
  g_power_cap.store(cap);
}

AlgebraElement m_ell_apply(const LengthFunction& length, const AlgebraElement& f, int power) {
  require_length_on(length, f);
  if (power < 0) throw Error(ErrorKind::InvalidArgument, "power must be non-negative");
  const auto& G = f.groupoid();
  AlgebraElement out(G);
  for (int g = 0; g < G.order(); ++g) {
    for (int x = 0; x < G.space_size(); ++x) {
      out(g, x) = std::pow(length.at(g, x), power) * f(g, x);
    }
  }
  return out;
}

DeltaMatrix delta_matrix(const LengthFunction& length, const AlgebraElement& f, int x, int k) {
  require_length_on(length, f);
  require_order(k);
  const auto& G = f.groupoid();
  if (x < 0 || x >= G.space_size()) {
    throw Error(ErrorKind::PointOutOfRange, "point " + std::to_string(x) + " is not in X");
  }
  const int n = G.order();
  DeltaMatrix out{x, k, ComplexMatrix(n, n)};
  for (int g = 0; g < n; ++g) {
    const double lg = length.at(g, x);
    for (int h = 0; h < n; ++h) {
      const double diff = g == h ? 0.0 : lg - length.at(h, x);
      out.matrix(g, h) = std::pow(diff, k) * f.flat(G.fibre_entry(x, g, h));
    }
  }
  return out;
}

AlgebraElement apply_to_unit(const LengthFunction& length, const AlgebraElement& f, int k) {
  require_order(k);
  return m_ell_apply(length, f, k);
}

double lipschitz_seminorm(const LengthFunction& length, const AlgebraElement& f, int k) {
  double best = 0.0;
  for (int x = 0; x < f.groupoid().space_size(); ++x) {
    best = std::max(best, spectral_norm(delta_matrix(length, f, x, k).matrix));
  }
  return best;
}

double default_kernel_tolerance(const AlgebraElement& f) { return 1e-10 * (1.0 + sup_norm(f)); }

bool kernel_test(const LengthFunction& length, const AlgebraElement& f, int k, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  return lipschitz_seminorm(length, f, k) <= tol;
}

bool syntactic_kernel_test(const LengthFunction& length, const AlgebraElement& f, int k,
                           double tol) {
  require_length_on(length, f);
  require_order(k);
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  const auto& G = f.groupoid();
  const double lmin = length.min_positive();
  if (!std::isfinite(lmin)) return true;  // trivial group: every element is on the units
  double off_unit = 0.0;
  for (int g = 0; g < G.order(); ++g) {
    if (g == G.identity()) continue;
    for (int x = 0; x < G.space_size(); ++x) off_unit = std::max(off_unit, std::abs(f(g, x)));
  }
  return off_unit <= tol / std::pow(lmin, k);
}

}  // namespace gqml

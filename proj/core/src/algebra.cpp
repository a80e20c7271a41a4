#include "gqml/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "gqml/errors.hpp"
#include "gqml/lp.hpp"

namespace gqml {

// ---------------------------------------------------------------------------
// AlgebraElement

AlgebraElement::AlgebraElement(TransformationGroupoid groupoid)
    : groupoid_(std::move(groupoid)), values_(groupoid_.size(), Complex(0.0, 0.0)) {}

AlgebraElement::AlgebraElement(TransformationGroupoid groupoid, std::vector<Complex> values)
    : groupoid_(std::move(groupoid)), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != groupoid_.size()) {
    throw Error(ErrorKind::ShapeMismatch, "element has " + std::to_string(values_.size()) +
                                              " entries, groupoid has " +
                                              std::to_string(groupoid_.size()) + " arrows");
  }
}

AlgebraElement AlgebraElement::zero(const TransformationGroupoid& groupoid) {
  return AlgebraElement(groupoid);
}

AlgebraElement AlgebraElement::delta(const TransformationGroupoid& groupoid, Arrow a,
                                     Complex value) {
  AlgebraElement f(groupoid);
  f[a] = value;
  return f;
}

AlgebraElement AlgebraElement::random(const TransformationGroupoid& groupoid,
                                      std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  AlgebraElement f(groupoid);
  for (auto& v : f.values_) {
    const double re = normal(rng);
    const double im = normal(rng);
    v = Complex(re, im);
  }
  return f;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& rhs) {
  require_same_groupoid(*this, rhs);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += rhs.values_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& rhs) {
  require_same_groupoid(*this, rhs);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= rhs.values_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex s) {
  for (auto& v : values_) v *= s;
  return *this;
}

double AlgebraElement::max_abs_diff(const AlgebraElement& other) const {
  require_same_groupoid(*this, other);
  double worst = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    worst = std::max(worst, std::abs(values_[i] - other.values_[i]));
  }
  return worst;
}

void require_same_groupoid(const AlgebraElement& a, const AlgebraElement& b) {
  if (!a.groupoid().same_as(b.groupoid())) {
    throw Error(ErrorKind::GroupoidMismatch, "elements live on different groupoids");
  }
}

// ---------------------------------------------------------------------------
// Products

AlgebraElement unit_element(const TransformationGroupoid& groupoid) {
  AlgebraElement f(groupoid);
  for (int x = 0; x < groupoid.space_size(); ++x) f[groupoid.unit(x)] = 1.0;
  return f;
}

AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& xi) {
  require_same_groupoid(f, xi);
  const auto& G = f.groupoid();
  AlgebraElement out(G);
  for (int x = 0; x < G.space_size(); ++x) {
    for (int g = 0; g < G.order(); ++g) {
      Complex acc = 0.0;
      for (int h = 0; h < G.order(); ++h) acc += f.flat(G.fibre_entry(x, g, h)) * xi(h, x);
      out(g, x) = acc;
    }
  }
  return out;
}

AlgebraElement involution(const AlgebraElement& f) {
  const auto& G = f.groupoid();
  AlgebraElement out(G);
  for (int g = 0; g < G.order(); ++g) {
    for (int x = 0; x < G.space_size(); ++x) out(g, x) = std::conj(f[G.inverse({g, x})]);
  }
  return out;
}

FibreMatrix fibre_matrix(const AlgebraElement& f, int x) {
  const auto& G = f.groupoid();
  if (x < 0 || x >= G.space_size()) {
    throw Error(ErrorKind::PointOutOfRange, "point " + std::to_string(x) + " is not in X");
  }
  const int n = G.order();
  FibreMatrix out{x, ComplexMatrix(n, n)};
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) out.matrix(g, h) = f.flat(G.fibre_entry(x, g, h));
  }
  return out;
}

ComplexVector fibre_vector(const AlgebraElement& xi, int x) {
  const auto& G = xi.groupoid();
  if (x < 0 || x >= G.space_size()) {
    throw Error(ErrorKind::PointOutOfRange, "point " + std::to_string(x) + " is not in X");
  }
  ComplexVector v(G.order());
  for (int g = 0; g < G.order(); ++g) v(g) = xi(g, x);
  return v;
}

AlgebraElement apply_regular(const AlgebraElement& f, const AlgebraElement& xi) {
  require_same_groupoid(f, xi);
  const auto& G = f.groupoid();
  AlgebraElement out(G);
  for (int x = 0; x < G.space_size(); ++x) {
    const ComplexVector image = fibre_matrix(f, x).matrix * fibre_vector(xi, x);
    for (int g = 0; g < G.order(); ++g) out(g, x) = image(g);
  }
  return out;
}

std::vector<Complex> module_inner_product(const AlgebraElement& xi, const AlgebraElement& eta) {
  require_same_groupoid(xi, eta);
  const auto& G = xi.groupoid();
  std::vector<Complex> out(G.space_size(), 0.0);
  for (int x = 0; x < G.space_size(); ++x) {
    for (int g = 0; g < G.order(); ++g) out[x] += std::conj(xi(g, x)) * eta(g, x);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Norms

double reduced_norm(const AlgebraElement& f) {
  double best = 0.0;
  for (int x = 0; x < f.groupoid().space_size(); ++x) {
    best = std::max(best, spectral_norm(fibre_matrix(f, x).matrix));
  }
  return best;
}

double i_norm(const AlgebraElement& f) {
  const auto& G = f.groupoid();
  double source_side = 0.0;
  double range_side = 0.0;
  for (int x = 0; x < G.space_size(); ++x) {
    double s = 0.0;
    double r = 0.0;
    for (int g = 0; g < G.order(); ++g) {
      s += std::abs(f(g, x));
      r += std::abs(f[G.inverse({g, x})]);
    }
    source_side = std::max(source_side, s);
    range_side = std::max(range_side, r);
  }
  return std::max(source_side, range_side);
}

double module_norm(const AlgebraElement& f) {
  const auto& G = f.groupoid();
  double best = 0.0;
  for (int x = 0; x < G.space_size(); ++x) {
    double s = 0.0;
    for (int g = 0; g < G.order(); ++g) s += std::norm(f(g, x));
    best = std::max(best, s);
  }
  return std::sqrt(best);
}

double sup_norm(const AlgebraElement& f) {
  double best = 0.0;
  for (const auto& v : f.values()) best = std::max(best, std::abs(v));
  return best;
}

AlgebraElement restrict_to_units(const AlgebraElement& f) {
  const auto& G = f.groupoid();
  AlgebraElement out(G);
  for (int x = 0; x < G.space_size(); ++x) out[G.unit(x)] = f[G.unit(x)];
  return out;
}

double sobolev_norm(const LengthFunction& length, const AlgebraElement& f, double p,
                    SobolevSide side) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw Error(ErrorKind::BadExponent, "Sobolev exponent must be positive");
  }
  const auto& G = f.groupoid();
  if (!G.same_as(length.groupoid())) {
    throw Error(ErrorKind::GroupoidMismatch, "length function lives on a different groupoid");
  }
  double source_side = 0.0;
  double range_side = 0.0;
  for (int x = 0; x < G.space_size(); ++x) {
    double s = 0.0;
    double r = 0.0;
    for (int g = 0; g < G.order(); ++g) {
      const double weight = std::pow(1.0 + length.at(g, x), 2.0 * p);
      s += std::norm(f(g, x)) * weight;
      r += std::norm(f[G.inverse({g, x})]) * weight;
    }
    source_side = std::max(source_side, s);
    range_side = std::max(range_side, r);
  }
  switch (side) {
    case SobolevSide::Source: return std::sqrt(source_side);
    case SobolevSide::Range: return std::sqrt(range_side);
    case SobolevSide::Max: break;
  }
  return std::sqrt(std::max(source_side, range_side));
}

// ---------------------------------------------------------------------------
// Quotient norm by Kelley cuts on φ ↦ max_x ‖F_x − diag(φ(g·x))‖.

namespace {

double shifted_norm(const std::vector<ComplexMatrix>& fibres, const TransformationGroupoid& G,
                    const std::vector<Complex>& phi) {
  double best = 0.0;
  for (int x = 0; x < G.space_size(); ++x) {
    ComplexMatrix m = fibres[x];
    for (int g = 0; g < G.order(); ++g) m(g, g) -= phi[G.act(g, x)];
    best = std::max(best, spectral_norm(m));
  }
  return best;
}

}  // namespace

QuotientNormResult quotient_norm(const AlgebraElement& f, const QuotientNormOptions& options) {
  const auto& G = f.groupoid();
  const int m = G.space_size();
  const int n = G.order();
  QuotientNormResult result;

  std::vector<ComplexMatrix> fibres;
  for (int x = 0; x < m; ++x) fibres.push_back(fibre_matrix(f, x).matrix);

  std::vector<Complex> phi0(m);
  for (int x = 0; x < m; ++x) phi0[x] = f[G.unit(x)];
  const double radius = shifted_norm(fibres, G, phi0);
  result.upper = radius;
  result.minimizer = phi0;
  if (radius == 0.0) {
    result.converged = true;
    return result;
  }

  // Variables: Re φ(0..m-1), Im φ(0..m-1), t.  Any minimiser has
  // |φ(x) − f(e,x)| ≤ ‖f − φ‖_∞ ≤ ‖f − φ‖_red ≤ radius.
  const int d = 2 * m + 1;
  Eigen::VectorXd objective = Eigen::VectorXd::Zero(d);
  objective(d - 1) = -1.0;
  Eigen::VectorXd lo(d), hi(d);
  for (int x = 0; x < m; ++x) {
    lo(x) = phi0[x].real() - radius;
    hi(x) = phi0[x].real() + radius;
    lo(m + x) = phi0[x].imag() - radius;
    hi(m + x) = phi0[x].imag() + radius;
  }
  lo(d - 1) = 0.0;
  hi(d - 1) = radius;
  CuttingPlaneLp lp(objective, lo, hi);

  auto add_cuts = [&](const std::vector<Complex>& phi) {
    for (int x = 0; x < m; ++x) {
      ComplexMatrix shifted = fibres[x];
      for (int g = 0; g < n; ++g) shifted(g, g) -= phi[G.act(g, x)];
      const SingularPair top = top_singular_pair(shifted);
      // σ_x(φ') ≥ Re(u† F_x v) − Σ_g Re(conj(u_g) v_g φ'(g·x)) ≤ t
      Eigen::VectorXd row = Eigen::VectorXd::Zero(d);
      row(d - 1) = -1.0;
      for (int g = 0; g < n; ++g) {
        const Complex w = std::conj(top.left(g)) * top.right(g);
        const int y = G.act(g, x);
        row(y) -= w.real();
        row(m + y) += w.imag();
      }
      const double constant = (top.left.adjoint() * fibres[x] * top.right)(0, 0).real();
      lp.add_cut(row, -constant);
    }
  };

  add_cuts(phi0);
  for (int it = 1; it <= options.budget; ++it) {
    const auto sol = lp.solve();
    result.iterations = it;
    result.lower = std::max(result.lower, -sol.certified_bound);
    std::vector<Complex> phi(m);
    for (int x = 0; x < m; ++x) phi[x] = Complex(sol.point(x), sol.point(m + x));
    const double value = shifted_norm(fibres, G, phi);
    if (value < result.upper) {
      result.upper = value;
      result.minimizer = phi;
    }
    if (result.upper - result.lower <= options.tol) {
      result.converged = true;
      break;
    }
    add_cuts(phi);
  }
  result.lower = std::min(result.lower, result.upper);
  result.value = result.upper;
  return result;
}

}  // namespace gqml

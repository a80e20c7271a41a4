#include "gqml/state.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gqml/errors.hpp"

namespace gqml {

State::State(TransformationGroupoid groupoid, std::vector<ComplexMatrix> blocks)
    : groupoid_(std::move(groupoid)), blocks_(std::move(blocks)) {
  const int n = groupoid_.order();
  if (static_cast<int>(blocks_.size()) != groupoid_.space_size()) {
    throw Error(ErrorKind::ShapeMismatch, "a state needs one block per point of X", "/blocks");
  }
  double trace = 0.0;
  for (int x = 0; x < groupoid_.space_size(); ++x) {
    const auto& b = blocks_[x];
    if (b.rows() != n || b.cols() != n) {
      throw Error(ErrorKind::ShapeMismatch, "block over x = " + std::to_string(x) + " is not " +
                                                std::to_string(n) + "x" + std::to_string(n),
                  "/blocks/" + std::to_string(x));
    }
    const double scale = 1.0 + b.cwiseAbs().maxCoeff();
    if ((b - b.adjoint()).cwiseAbs().maxCoeff() > kStateTolerance * scale) {
      throw Error(ErrorKind::InvalidState, "block over x = " + std::to_string(x) + " is not Hermitian",
                  "/blocks/" + std::to_string(x));
    }
    if (min_hermitian_eigenvalue(b) < -kStateTolerance) {
      throw Error(ErrorKind::InvalidState,
                  "block over x = " + std::to_string(x) + " is not positive semidefinite",
                  "/blocks/" + std::to_string(x));
    }
    trace += b.trace().real();
  }
  if (std::abs(trace - 1.0) > kStateTolerance) {
    throw Error(ErrorKind::InvalidState, "total trace is " + std::to_string(trace) + ", not 1",
                "/blocks");
  }
}

Complex evaluate(const State& state, const AlgebraElement& f) {
  const auto& G = state.groupoid();
  if (!G.same_as(f.groupoid())) {
    throw Error(ErrorKind::ShapeMismatch, "state and element live on different groupoids");
  }
  Complex total = 0.0;
  for (int x = 0; x < G.space_size(); ++x) {
    total += (state.block(x) * fibre_matrix(f, x).matrix).trace();
  }
  return total;
}

AlgebraElement state_density(const State& state) {
  const auto& G = state.groupoid();
  const int n = G.order();
  AlgebraElement w(G);
  // tr(ρF) = Σ_{g,h} ρ[h][g] F[g][h]
  for (int x = 0; x < G.space_size(); ++x) {
    for (int g = 0; g < n; ++g) {
      for (int h = 0; h < n; ++h) w.flat(G.fibre_entry(x, g, h)) += state.block(x)(h, g);
    }
  }
  return w;
}

State vector_state(const TransformationGroupoid& groupoid, int x, const ComplexVector& psi) {
  if (x < 0 || x >= groupoid.space_size()) {
    throw Error(ErrorKind::PointOutOfRange, "point " + std::to_string(x) + " is not in X");
  }
  if (psi.size() != groupoid.order()) {
    throw Error(ErrorKind::ShapeMismatch, "vector length must equal the group order");
  }
  if (std::abs(psi.norm() - 1.0) > kStateTolerance) {
    throw Error(ErrorKind::NotUnitVector, "vector has norm " + std::to_string(psi.norm()));
  }
  std::vector<ComplexMatrix> blocks(groupoid.space_size(),
                                    ComplexMatrix::Zero(groupoid.order(), groupoid.order()));
  blocks[x] = psi * psi.adjoint();
  return State(groupoid, std::move(blocks));
}

FibreMeasure fibre_measure(const State& state) {
  const auto& G = state.groupoid();
  FibreMeasure eta{std::vector<double>(G.space_size(), 0.0)};
  for (int x = 0; x < G.space_size(); ++x) {
    for (int g = 0; g < G.order(); ++g) eta.weights[G.act(g, x)] += state.block(x)(g, g).real();
  }
  return eta;
}

double fibre_distance(const State& mu, const State& nu) {
  if (!mu.groupoid().same_as(nu.groupoid())) {
    throw Error(ErrorKind::ShapeMismatch, "states live on different groupoids");
  }
  const auto a = fibre_measure(mu).weights;
  const auto b = fibre_measure(nu).weights;
  double worst = 0.0;
  for (std::size_t y = 0; y < a.size(); ++y) worst = std::max(worst, std::abs(a[y] - b[y]));
  return worst;
}

bool same_fibre(const State& mu, const State& nu, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  return fibre_distance(mu, nu) <= tol;
}

namespace {

ComplexMatrix gaussian_gram(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  ComplexMatrix rho = g * g.adjoint();
  return 0.5 * (rho + rho.adjoint());
}

}  // namespace

State random_state(const TransformationGroupoid& groupoid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = groupoid.order();
  std::vector<ComplexMatrix> blocks;
  double trace = 0.0;
  for (int x = 0; x < groupoid.space_size(); ++x) {
    blocks.push_back(gaussian_gram(n, rng));
    trace += blocks.back().trace().real();
  }
  for (auto& b : blocks) b /= trace;
  return State(groupoid, std::move(blocks));
}

State random_same_fibre_state(const State& reference, std::uint64_t seed) {
  const auto& G = reference.groupoid();
  std::mt19937_64 rng(seed);
  const int n = G.order();
  std::vector<ComplexMatrix> blocks;
  for (int x = 0; x < G.space_size(); ++x) {
    const ComplexMatrix raw = gaussian_gram(n, rng);
    const auto& ref = reference.block(x);
    Eigen::VectorXd scale(n);
    for (int g = 0; g < n; ++g) {
      const double target = ref(g, g).real();
      if (target < 0.0) throw Error(ErrorKind::InvalidState, "reference has a negative diagonal");
      scale(g) = std::sqrt(target / raw(g, g).real());
    }
    ComplexMatrix b = scale.asDiagonal() * raw * scale.asDiagonal();
    for (int g = 0; g < n; ++g) b(g, g) = ref(g, g).real();
    blocks.push_back(std::move(b));
  }
  return State(G, std::move(blocks));
}

State mix(const State& mu, const State& nu, double t) {
  if (!mu.groupoid().same_as(nu.groupoid())) {
    throw Error(ErrorKind::ShapeMismatch, "states live on different groupoids");
  }
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::InvalidArgument, "t must lie in [0, 1]");
  std::vector<ComplexMatrix> blocks;
  for (int x = 0; x < mu.groupoid().space_size(); ++x) {
    blocks.push_back(t * mu.block(x) + (1.0 - t) * nu.block(x));
  }
  return State(mu.groupoid(), std::move(blocks));
}

}  // namespace gqml

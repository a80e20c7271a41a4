#include "gqml/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "gqml/dirac.hpp"
#include "gqml/errors.hpp"
#include "gqml/linalg.hpp"
#include "gqml/lp.hpp"
#include "parallel.hpp"

namespace gqml {

SelfAdjointParameterization::SelfAdjointParameterization(TransformationGroupoid groupoid)
    : groupoid_(std::move(groupoid)) {
  std::vector<char> seen(groupoid_.size(), 0);
  for (int i = 0; i < groupoid_.size(); ++i) {
    if (seen[i]) continue;
    const Arrow a = groupoid_.arrow(i);
    if (groupoid_.is_unit(a)) continue;
    const Arrow b = groupoid_.inverse(a);
    seen[i] = 1;
    seen[groupoid_.index(b)] = 1;
    coordinates_.push_back({a, b, false});
    if (!(a == b)) coordinates_.push_back({a, b, true});
  }
}

AlgebraElement SelfAdjointParameterization::element(const Eigen::VectorXd& theta) const {
  if (theta.size() != dimension()) {
    throw Error(ErrorKind::ShapeMismatch, "coordinate vector has the wrong length");
  }
  AlgebraElement f(groupoid_);
  for (int i = 0; i < dimension(); ++i) {
    const auto& c = coordinates_[i];
    if (c.imaginary) {
      f[c.arrow] += Complex(0.0, theta(i));
      f[c.partner] += Complex(0.0, -theta(i));
    } else if (c.arrow == c.partner) {
      f[c.arrow] += theta(i);
    } else {
      f[c.arrow] += theta(i);
      f[c.partner] += theta(i);
    }
  }
  return f;
}

Eigen::VectorXd SelfAdjointParameterization::coordinates_of(const AlgebraElement& f) const {
  Eigen::VectorXd theta(dimension());
  for (int i = 0; i < dimension(); ++i) {
    const auto& c = coordinates_[i];
    theta(i) = c.imaginary ? f[c.arrow].imag() : f[c.arrow].real();
  }
  return theta;
}

Eigen::VectorXd SelfAdjointParameterization::linear_form(const AlgebraElement& weights) const {
  Eigen::VectorXd a(dimension());
  for (int i = 0; i < dimension(); ++i) {
    const auto& c = coordinates_[i];
    const Complex wa = weights[c.arrow];
    const Complex wb = weights[c.partner];
    if (c.imaginary) {
      a(i) = wb.imag() - wa.imag();
    } else if (c.arrow == c.partner) {
      a(i) = wa.real();
    } else {
      a(i) = wa.real() + wb.real();
    }
  }
  return a;
}

std::string_view to_string(DistanceStatus status) {
  switch (status) {
    case DistanceStatus::Converged: return "converged";
    case DistanceStatus::BudgetExceeded: return "budget_exceeded";
    case DistanceStatus::Infinite: return "infinite";
  }
  return "unknown";
}

namespace {

void require_compatible(const LengthFunction& length, const State& mu, const State& nu) {
  if (!mu.groupoid().same_as(nu.groupoid()) || !length.groupoid().same_as(mu.groupoid())) {
    throw Error(ErrorKind::ShapeMismatch, "states and length function live on different groupoids");
  }
}

// Δᵏ of each coordinate direction, per fibre: Δᵏ_x(θ) = Σ_i θ_i basis[x][i].
std::vector<std::vector<ComplexMatrix>> delta_basis(const LengthFunction& length,
                                                    const SelfAdjointParameterization& param, int k) {
  const auto& G = param.groupoid();
  std::vector<std::vector<ComplexMatrix>> basis(G.space_size());
  for (int i = 0; i < param.dimension(); ++i) {
    const AlgebraElement e = param.element(Eigen::VectorXd::Unit(param.dimension(), i));
    for (int x = 0; x < G.space_size(); ++x) basis[x].push_back(delta_matrix(length, e, x, k).matrix);
  }
  return basis;
}

ComplexMatrix combine(const std::vector<ComplexMatrix>& basis, const Eigen::VectorXd& theta, int n) {
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (theta(i) != 0.0) m += theta(i) * basis[i];
  }
  return m;
}

}  // namespace

DistanceCertificate connes_distance(const LengthFunction& length, const State& mu, const State& nu,
                                    const DistanceOptions& options) {
  require_compatible(length, mu, nu);
  if (options.k < 1 || options.k > power_cap()) {
    throw Error(ErrorKind::InvalidArgument, "commutator order k outside 1.." + std::to_string(power_cap()));
  }
  if (!(options.tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tol must be positive");
  if (options.budget < 1) throw Error(ErrorKind::InvalidArgument, "budget must be positive");
  if (!(options.fibre_tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "fibre_tol must be positive");

  const auto& G = mu.groupoid();
  DistanceCertificate cert(G);
  cert.k = options.k;
  cert.tol = options.tol;
  cert.fibre_a = fibre_measure(mu);
  cert.fibre_b = fibre_measure(nu);

  const double fibre_gap = fibre_distance(mu, nu);
  if (fibre_gap > 10.0 * options.fibre_tol) {
    cert.status = DistanceStatus::Infinite;
    cert.lower = cert.upper = std::numeric_limits<double>::infinity();
    cert.gap = 0.0;
    for (int y = 0; y < G.space_size(); ++y) {
      cert.witness(G.identity(), y) = cert.fibre_a.weights[y] - cert.fibre_b.weights[y];
    }
    return cert;
  }
  if (fibre_gap > options.fibre_tol) {
    throw Error(ErrorKind::FibreToleranceAmbiguous,
                "fibre measures differ by " + std::to_string(fibre_gap) +
                    ", between fibre_tol and 10*fibre_tol");
  }

  const SelfAdjointParameterization param(G);
  const int d = param.dimension();
  const Eigen::VectorXd c = param.linear_form(state_density(mu) - state_density(nu));
  if (d == 0 || c.cwiseAbs().maxCoeff() == 0.0) {
    cert.status = DistanceStatus::Converged;
    return cert;
  }

  // |f(γ)| ≤ ℓ(γ)^{-k} on the feasible set, read off from Δᵏ(f) applied to 𝓔.
  Eigen::VectorXd box(d);
  for (int i = 0; i < d; ++i) box(i) = std::pow(length(param.coordinates()[i].arrow), -options.k);

  const auto basis = delta_basis(length, param, options.k);
  const int n = G.order();
  CuttingPlaneLp lp(c, -box, box);
  double upper = std::numeric_limits<double>::infinity();
  double lower = 0.0;
  Eigen::VectorXd best = Eigen::VectorXd::Zero(d);

  while (true) {
    const auto sol = lp.solve();
    ++cert.iterations;
    upper = std::min(upper, sol.certified_bound);
    const Eigen::VectorXd& theta = sol.point;

    std::vector<ComplexMatrix> deltas;
    double lip = 0.0;
    for (int x = 0; x < G.space_size(); ++x) {
      deltas.push_back(combine(basis[x], theta, n));
      lip = std::max(lip, spectral_norm(deltas.back()));
    }
    const double scale = std::max(1.0, lip);
    const double candidate = c.dot(theta) / scale;
    if (candidate > lower) {
      lower = candidate;
      best = theta / scale;
    }
    if (upper - lower <= options.tol) {
      cert.status = DistanceStatus::Converged;
      break;
    }
    if (lp.cut_count() >= options.budget) {
      cert.status = DistanceStatus::BudgetExceeded;
      break;
    }

    int added = 0;
    for (int x = 0; x < G.space_size() && lp.cut_count() < options.budget; ++x) {
      for (const auto& pair : singular_pairs_above(deltas[x], 1.0)) {
        if (lp.cut_count() >= options.budget) break;
        Eigen::VectorXd row(d);
        for (int i = 0; i < d; ++i) {
          row(i) = pair.left.dot(basis[x][i] * pair.right).real();
        }
        lp.add_cut(row, 1.0);
        ++added;
      }
    }
    if (added == 0) {
      // The LP optimum is already feasible; what remains is round-off between
      // the primal value and its certified bound.
      cert.status = upper - lower <= options.tol ? DistanceStatus::Converged
                                                 : DistanceStatus::BudgetExceeded;
      break;
    }
  }

  cert.lower = lower;
  cert.upper = std::max(upper, lower);
  cert.gap = cert.upper - cert.lower;
  cert.cuts = lp.cut_count();
  cert.witness = param.element(best);
  return cert;
}

namespace {

// [M_ℓ, ·] applied k times to the fibre matrix of f.
ComplexMatrix nested_commutator(const LengthFunction& length, const AlgebraElement& f, int x, int k) {
  const auto& G = f.groupoid();
  Eigen::VectorXd ell(G.order());
  for (int g = 0; g < G.order(); ++g) ell(g) = length.at(g, x);
  ComplexMatrix m = fibre_matrix(f, x).matrix;
  for (int step = 0; step < k; ++step) {
    ComplexMatrix next = ell.asDiagonal() * m - m * ell.asDiagonal();
    m = std::move(next);
  }
  return m;
}

}  // namespace

double brute_force_distance(const LengthFunction& length, const State& mu, const State& nu,
                            const BruteForceOptions& options) {
  require_compatible(length, mu, nu);
  if (options.k < 1 || options.k > power_cap()) {
    throw Error(ErrorKind::InvalidArgument, "commutator order k outside 1.." + std::to_string(power_cap()));
  }
  if (options.samples < 1) throw Error(ErrorKind::InvalidArgument, "samples must be positive");
  if (options.threads < 1) throw Error(ErrorKind::InvalidArgument, "threads must be positive");
  if (!same_fibre(mu, nu)) {
    throw Error(ErrorKind::InvalidArgument, "brute force only covers states of one fibre");
  }
  const auto& G = mu.groupoid();
  const SelfAdjointParameterization param(G);
  const int d = param.dimension();
  if (d > options.max_parameters) {
    throw Error(ErrorKind::TooManyParameters, std::to_string(d) + " real parameters exceed the limit of " +
                                                  std::to_string(options.max_parameters));
  }
  if (d == 0) return 0.0;

  Eigen::VectorXd c(d);
  std::vector<std::vector<ComplexMatrix>> herm(G.space_size());
  // For odd k, Δᵏ of a self-adjoint element is anti-Hermitian; i·Δᵏ is Hermitian.
  const Complex phase = options.k % 2 == 0 ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
  for (int i = 0; i < d; ++i) {
    const AlgebraElement e = param.element(Eigen::VectorXd::Unit(d, i));
    c(i) = (evaluate(mu, e) - evaluate(nu, e)).real();
    for (int x = 0; x < G.space_size(); ++x) {
      herm[x].push_back(phase * nested_commutator(length, e, x, options.k));
    }
  }
  const int n = G.order();

  auto ratio = [&](const Eigen::VectorXd& theta) {
    double lip = 0.0;
    for (int x = 0; x < G.space_size(); ++x) {
      ComplexMatrix h = ComplexMatrix::Zero(n, n);
      for (int i = 0; i < d; ++i) h += theta(i) * herm[x][i];
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
      const auto& ev = es.eigenvalues();
      lip = std::max({lip, std::abs(ev(0)), std::abs(ev(ev.size() - 1))});
    }
    return lip > 0.0 ? std::abs(c.dot(theta)) / lip : 0.0;
  };

  // Half the budget goes to global directions, the rest to rounds of Gaussian
  // perturbations around the incumbent whose radius halves after a round
  // without improvement. Every chunk has its own seed and results are reduced
  // in chunk order, so the thread count never changes the answer.
  struct Best {
    double value = 0.0;
    Eigen::VectorXd theta;
  };
  auto run = [&](std::int64_t count, std::uint64_t stream, const Eigen::VectorXd* centre, double radius) {
    std::seed_seq seq{static_cast<std::uint64_t>(options.seed), stream};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    Best best{0.0, Eigen::VectorXd::Zero(d)};
    Eigen::VectorXd theta(d);
    for (std::int64_t s = 0; s < count; ++s) {
      for (int i = 0; i < d; ++i) theta(i) = normal(rng);
      if (centre != nullptr) theta = *centre + radius * theta;
      const double r = ratio(theta);
      if (r > best.value) best = {r, theta.normalized()};
    }
    return best;
  };
  auto sweep = [&](std::int64_t total, std::uint64_t first_stream, const Eigen::VectorXd* centre,
                   double radius, std::int64_t chunk) {
    const std::int64_t chunks = (total + chunk - 1) / chunk;
    std::vector<Best> found(chunks);
    detail::parallel_for(chunks, options.threads, [&](std::int64_t ch) {
      found[ch] = run(std::min(chunk, total - ch * chunk), first_stream + ch, centre, radius);
    });
    Best best{0.0, Eigen::VectorXd::Zero(d)};
    for (auto& f : found) {
      if (f.value > best.value) best = std::move(f);
    }
    return best;
  };

  const std::int64_t local_total = options.samples / 2;
  const std::int64_t global_total = options.samples - local_total;
  Best best = sweep(global_total, 0, nullptr, 0.0, 4096);

  constexpr std::int64_t kRound = 4096;
  std::uint64_t stream = std::uint64_t{1} << 40;
  double radius = 0.25;
  for (std::int64_t done = 0; done < local_total && best.value > 0.0; done += kRound) {
    const std::int64_t count = std::min(kRound, local_total - done);
    Best round = sweep(count, stream, &best.theta, radius, 512);
    stream += (count + 511) / 512;
    if (round.value > best.value) {
      best = std::move(round);
    } else {
      radius = std::max(0.5 * radius, 1e-7);
    }
  }
  return best.value;
}

double alpha_constant(const LengthFunction& length, int k, double p, double n) {
  const auto& G = length.groupoid();
  const Ball b = ball(length, n);
  if (b.group_subset.size() <= 1) {
    throw Error(ErrorKind::EmptyBall, "the ball of radius " + std::to_string(n) + " contains only e");
  }
  if (!(p > 0.0) || !(k > p)) throw Error(ErrorKind::InvalidArgument, "need k > p > 0");
  if (!(n >= 1.0)) throw Error(ErrorKind::InvalidArgument, "need n >= 1");
  const double tail = std::pow(2.0, 2.0 * p) * std::pow(n, 2.0 * p - 2.0 * k);
  double worst = 0.0;
  for (int g : b.group_subset) {
    if (g == G.identity()) continue;
    for (int x = 0; x < G.space_size(); ++x) {
      worst = std::max(worst, std::pow(1.0 + 1.0 / length.at(g, x), 2.0 * k) + tail);
    }
  }
  return std::sqrt(worst);
}

SobolevBoundReport sobolev_bound_check(const LengthFunction& length, const AlgebraElement& f, int k, double p,
                          double n) {
  if (sup_norm(restrict_to_units(f)) != 0.0) {
    throw Error(ErrorKind::InvalidArgument, "f must vanish on the units");
  }
  SobolevBoundReport r;
  r.alpha = alpha_constant(length, k, p, n);
  r.sobolev = sobolev_norm(length, f, p);
  r.lipschitz = lipschitz_seminorm(length, f, k);
  r.bound = r.alpha * r.lipschitz;
  r.slack = r.bound - r.sobolev;
  r.holds = r.sobolev <= r.bound * (1.0 + 1e-12) + 1e-14;
  return r;
}

double diameter_bound(const LengthFunction& length, int k, double p, double n, double rd_constant) {
  if (!(rd_constant > 0.0) || !std::isfinite(rd_constant)) {
    throw Error(ErrorKind::InvalidArgument, "rapid-decay constant must be positive and finite");
  }
  return 2.0 * rd_constant * alpha_constant(length, k, p, n);
}

MetricAxiomsReport metric_axioms_check(const LengthFunction& length, const std::vector<State>& states,
                                       const DistanceOptions& options) {
  const int m = static_cast<int>(states.size());
  for (int i = 1; i < m; ++i) {
    if (!same_fibre(states[0], states[i], options.fibre_tol)) {
      throw Error(ErrorKind::InvalidArgument, "state " + std::to_string(i) + " lies in another fibre");
    }
  }
  MetricAxiomsReport r;
  if (m == 0) return r;
  r.distances.assign(m, std::vector<DistanceCertificate>(m, DistanceCertificate(states[0].groupoid())));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i != j) r.distances[i][j] = connes_distance(length, states[i], states[j], options);
    }
  }
  const auto& D = r.distances;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      r.max_symmetry_defect = std::max(r.max_symmetry_defect, std::abs(D[i][j].lower - D[j][i].lower));
    }
  }
  r.symmetric = r.max_symmetry_defect <= 2.0 * options.tol;

  r.max_triangle_defect = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int l = 0; l < m; ++l) {
        if (i == j || j == l || i == l) continue;
        r.max_triangle_defect =
            std::max(r.max_triangle_defect, D[i][l].upper - D[i][j].lower - D[j][l].lower);
      }
    }
  }
  if (m < 3) r.max_triangle_defect = 0.0;
  r.triangle = r.max_triangle_defect <= 3.0 * options.tol;

  if (m > 1) {
    const SelfAdjointParameterization param(states[0].groupoid());
    std::vector<AlgebraElement> basis;
    for (int i = 0; i < param.dimension(); ++i) {
      basis.push_back(param.element(Eigen::VectorXd::Unit(param.dimension(), i)));
    }
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        if (i == j) continue;
        bool separated = false;
        for (const auto& e : basis) {
          if (std::abs(evaluate(states[i], e) - evaluate(states[j], e)) > 1e-9) separated = true;
        }
        if (separated && !(D[i][j].lower > 0.0)) ++r.positivity_violations;
      }
    }
  }
  r.positive = r.positivity_violations == 0;
  return r;
}

}  // namespace gqml

#include "gqml_app/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "gqml/dirac.hpp"
#include "gqml/errors.hpp"
#include "gqml/metric.hpp"
#include "gqml/rapid_decay.hpp"

namespace gqml::app {

namespace {

class Suite {
 public:
  // Records a ≤ b + tol.
  void at_most(double a, double b, double tol) { record(b + tol - a); }
  // Records |a − b| ≤ tol.
  void close(double a, double b, double tol) { record(tol - std::abs(a - b)); }
  void holds(bool ok) { record(ok ? 0.0 : -1.0); }

  Json json() const {
    return {{"checks", checks_},
            {"failures", failures_},
            {"worst_slack", checks_ > 0 ? worst_ : 0.0},
            {"passed", failures_ == 0}};
  }

 private:
  void record(double slack) {
    ++checks_;
    if (!(slack >= 0.0)) ++failures_;  // NaN counts as a failure
    worst_ = std::min(worst_, slack);
  }

  int checks_ = 0;
  int failures_ = 0;
  double worst_ = std::numeric_limits<double>::infinity();
};

AlgebraElement unit_killed(AlgebraElement f) {
  for (int x = 0; x < f.groupoid().space_size(); ++x) f(f.groupoid().identity(), x) = 0.0;
  return f;
}

ComplexMatrix nested_commutator(const LengthFunction& length, const AlgebraElement& f, int x, int k) {
  const auto& G = f.groupoid();
  Eigen::VectorXd ell(G.order());
  for (int g = 0; g < G.order(); ++g) ell(g) = length.at(g, x);
  ComplexMatrix m = fibre_matrix(f, x).matrix;
  for (int i = 0; i < k; ++i) {
    ComplexMatrix next = ell.asDiagonal() * m - m * ell.asDiagonal();
    m = std::move(next);
  }
  return m;
}

Suite groupoid_suite(const TransformationGroupoid& G) {
  Suite s;
  for (int i = 0; i < G.size(); ++i) {
    const Arrow a = G.arrow(i);
    const Arrow inv = G.inverse(a);
    s.holds(G.compose(a, inv) == G.unit(G.range(a)));
    s.holds(G.compose(inv, a) == G.unit(G.source(a)));
    for (int j = 0; j < G.size(); ++j) {
      const Arrow b = G.arrow(j);
      if (!G.composable(a, b)) continue;
      const Arrow ab = G.compose(a, b);
      s.holds(G.source(ab) == G.source(b) && G.range(ab) == G.range(a));
      for (int g = 0; g < G.order(); ++g) {
        const Arrow c{g, G.act(G.group().inverse(g), b.x)};  // the arrow ending at s(b)
        s.holds(G.compose(G.compose(a, b), c) == G.compose(a, G.compose(b, c)));
      }
    }
  }
  return s;
}

Suite length_suite(const LengthFunction& length) {
  Suite s;
  const auto& G = length.groupoid();
  for (int i = 0; i < G.size(); ++i) {
    const Arrow a = G.arrow(i);
    if (G.is_unit(a)) {
      s.close(length(a), 0.0, 0.0);
    } else {
      s.holds(length(a) > 0.0);
    }
    s.close(length(a), length(G.inverse(a)), 1e-12 * (1.0 + length(a)));
    for (int j = 0; j < G.size(); ++j) {
      const Arrow b = G.arrow(j);
      if (G.composable(a, b)) s.at_most(length(G.compose(a, b)), length(a) + length(b), 1e-12);
    }
  }
  return s;
}

Suite convolution_suite(const TransformationGroupoid& G, std::mt19937_64& rng, int trials) {
  Suite s;
  const AlgebraElement unit = unit_element(G);
  for (int t = 0; t < trials; ++t) {
    const auto f = AlgebraElement::random(G, rng);
    const auto g = AlgebraElement::random(G, rng);
    const auto h = AlgebraElement::random(G, rng);
    const double scale = 1.0 + sup_norm(f) * sup_norm(g) * sup_norm(h) * G.order() * G.order();
    s.close(convolve(convolve(f, g), h).max_abs_diff(convolve(f, convolve(g, h))), 0.0, 1e-12 * scale);
    s.close(convolve(unit, f).max_abs_diff(f), 0.0, 1e-14);
    s.close(convolve(f, unit).max_abs_diff(f), 0.0, 1e-14);
    s.close(involution(convolve(f, g)).max_abs_diff(convolve(involution(g), involution(f))), 0.0,
            1e-12 * scale);
    s.close(involution(involution(f)).max_abs_diff(f), 0.0, 0.0);
    for (int x = 0; x < G.space_size(); ++x) {
      const ComplexMatrix lhs = fibre_matrix(convolve(f, g), x).matrix;
      const ComplexMatrix rhs = fibre_matrix(f, x).matrix * fibre_matrix(g, x).matrix;
      s.close((lhs - rhs).cwiseAbs().maxCoeff(), 0.0, 1e-12 * scale);
      const ComplexMatrix adj = fibre_matrix(involution(f), x).matrix;
      s.close((adj - fibre_matrix(f, x).matrix.adjoint()).cwiseAbs().maxCoeff(), 0.0, 0.0);
    }
  }
  return s;
}

Suite norm_suite(const TransformationGroupoid& G, std::mt19937_64& rng, int trials) {
  Suite s;
  for (int t = 0; t < trials; ++t) {
    const auto f = AlgebraElement::random(G, rng);
    const auto g = AlgebraElement::random(G, rng);
    const double red = reduced_norm(f);
    s.at_most(sup_norm(f), module_norm(f), 1e-12);
    s.at_most(module_norm(f), red, 1e-12 * (1.0 + red));
    s.at_most(red, i_norm(f), 1e-12 * (1.0 + red));
    s.close(reduced_norm(convolve(involution(f), f)), red * red, 1e-9 * red * red);
    s.at_most(reduced_norm(f + g), red + reduced_norm(g), 1e-12 * (1.0 + red));
    s.at_most(reduced_norm(convolve(f, g)), red * reduced_norm(g), 1e-12 * (1.0 + red));
    const auto q = quotient_norm(f);
    s.at_most(q.lower, q.upper, 1e-12);
    s.at_most(q.upper, reduced_norm(f - restrict_to_units(f)), 1e-12 * (1.0 + red));
    s.at_most(q.upper, red, 1e-12 * (1.0 + red));
  }
  return s;
}

Suite dirac_suite(const LengthFunction& length, std::mt19937_64& rng, int trials) {
  Suite s;
  const auto& G = length.groupoid();
  const double lmin = length.min_positive();
  for (int t = 0; t < trials; ++t) {
    const auto f = AlgebraElement::random(G, rng);
    const auto fstar = involution(f);
    for (int k = 1; k <= 3; ++k) {
      const double sign = k % 2 == 0 ? 1.0 : -1.0;
      double scale = 1.0 + sup_norm(f) * std::pow(length.max_value(), k);
      for (int x = 0; x < G.space_size(); ++x) {
        const ComplexMatrix d = delta_matrix(length, f, x, k).matrix;
        const ComplexMatrix ds = delta_matrix(length, fstar, x, k).matrix;
        s.close((d.adjoint() - sign * ds).cwiseAbs().maxCoeff(), 0.0, 1e-12 * scale);
        s.close((d - nested_commutator(length, f, x, k)).cwiseAbs().maxCoeff(), 0.0, 1e-12 * scale);
      }
      AlgebraElement units = restrict_to_units(f);
      s.at_most(lipschitz_seminorm(length, units, k), 0.0, 1e-12);
      if (std::isfinite(lmin)) {
        double off = 0.0;
        for (int g = 0; g < G.order(); ++g) {
          if (g == G.identity()) continue;
          for (int x = 0; x < G.space_size(); ++x) off = std::max(off, std::abs(f(g, x)));
        }
        s.at_most(std::pow(lmin, k) * off, lipschitz_seminorm(length, f, k), 1e-9);
      }
    }
  }
  return s;
}

Suite sobolev_bound_suite(const LengthFunction& length, std::mt19937_64& rng, int trials) {
  Suite s;
  const auto& G = length.groupoid();
  struct Case {
    double p;
    int k;
    double n;
  };
  const double lmin = length.min_positive();
  if (!std::isfinite(lmin)) return s;
  for (const Case c : {Case{0.5, 1, 1.0}, Case{1.0, 2, 2.0}}) {
    const double n = std::max(c.n, lmin);  // keep Γ_n ≠ {e}
    for (int t = 0; t < trials; ++t) {
      const auto r = sobolev_bound_check(length, unit_killed(AlgebraElement::random(G, rng)), c.k, c.p, n);
      s.at_most(r.sobolev, r.bound, 1e-12 * (1.0 + r.bound));
    }
  }
  return s;
}

Suite state_suite(const TransformationGroupoid& G, std::mt19937_64& rng, int trials) {
  Suite s;
  const AlgebraElement unit = unit_element(G);
  for (int t = 0; t < trials; ++t) {
    const State w = random_state(G, rng());
    const auto f = AlgebraElement::random(G, rng);
    s.close(std::abs(evaluate(w, unit) - 1.0), 0.0, 1e-12);
    const Complex pos = evaluate(w, convolve(involution(f), f));
    s.at_most(0.0, pos.real(), 1e-12 * (1.0 + std::abs(pos)));
    s.close(pos.imag(), 0.0, 1e-12 * (1.0 + std::abs(pos)));
    const AlgebraElement density = state_density(w);
    Complex direct = 0.0;
    for (int i = 0; i < G.size(); ++i) direct += density.flat(i) * f.flat(i);
    s.close(std::abs(direct - evaluate(w, f)), 0.0, 1e-12 * (1.0 + sup_norm(f)) * G.size());
    double total = 0.0;
    for (double v : fibre_measure(w).weights) {
      s.at_most(0.0, v, 1e-12);
      total += v;
    }
    s.close(total, 1.0, 1e-12);
    const State v = random_same_fibre_state(w, rng());
    s.holds(same_fibre(w, v));
  }
  return s;
}

Suite metric_suite(const LengthFunction& length, std::mt19937_64& rng) {
  Suite s;
  const auto& G = length.groupoid();
  DistanceOptions o;
  const State base = random_state(G, rng());
  std::vector<State> states{base};
  for (int i = 0; i < 3; ++i) states.push_back(random_same_fibre_state(base, rng()));
  const auto report = metric_axioms_check(length, states, o);
  s.at_most(report.max_symmetry_defect, 2.0 * o.tol, 0.0);
  s.at_most(report.max_triangle_defect, 3.0 * o.tol, 0.0);
  s.holds(report.positive);
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = 0; j < states.size(); ++j) {
      if (i == j) continue;
      const auto& cert = report.distances[i][j];
      s.holds(cert.status == DistanceStatus::Converged);
      s.at_most(cert.gap, o.tol, 0.0);
      s.at_most(lipschitz_seminorm(length, cert.witness, o.k), 1.0, 1e-9);
      const double value = (evaluate(states[i], cert.witness) - evaluate(states[j], cert.witness)).real();
      s.close(value, cert.lower, 1e-9);
    }
  }
  const auto self = connes_distance(length, base, base, o);
  s.close(self.upper, 0.0, o.tol);

  // A pair in different fibres, when X has room for one.
  if (G.space_size() > 1) {
    std::vector<ComplexMatrix> blocks(G.space_size(), ComplexMatrix::Zero(G.order(), G.order()));
    blocks[0](G.identity(), G.identity()) = 1.0;
    const State point(G, blocks);
    if (fibre_distance(point, base) > 10.0 * o.fibre_tol) {
      s.holds(connes_distance(length, point, base, o).status == DistanceStatus::Infinite);
    }
  }
  return s;
}

Suite rd_suite(const LengthFunction& length, std::uint64_t seed, int threads, std::mt19937_64& rng,
               RdReport& report_out) {
  Suite s;
  const auto& G = length.groupoid();
  RdOptions o;
  o.p = 0.5;  // the diameter suite reuses this constant with p = 1/2
  o.samples = 500;
  o.seed = seed;
  o.threads = threads;
  report_out = empirical_rd_constant(length, o);
  const double c = report_out.empirical_c;
  s.at_most(1.0, c, 1e-12);
  s.close(rd_ratio(length, report_out.argmax, o.p), c, 1e-12 * c);
  s.at_most(rd_ratio(length, unit_element(G), o.p), c, 1e-12);
  for (int i = 0; i < G.size(); ++i) {
    s.at_most(rd_ratio(length, AlgebraElement::delta(G, G.arrow(i)), o.p), c, 1e-12);
  }
  const auto& tails = report_out.tail_table;
  for (std::size_t j = 1; j < tails.size(); ++j) s.at_most(tails[j].tail, tails[j - 1].tail, 1e-12);
  for (int t = 0; t < 20; ++t) {
    const auto f = AlgebraElement::random(G, rng);
    const double top = length.max_value();
    s.close(tail_norm(length, f, top), 0.0, 0.0);
    for (const auto& entry : tails) {
      const auto once = truncate(length, f, entry.n);
      s.close(truncate(length, once, entry.n).max_abs_diff(once), 0.0, 0.0);
    }
  }
  return s;
}

Suite diameter_suite(const LengthFunction& length, double rd_constant, std::mt19937_64& rng) {
  Suite s;
  const auto& G = length.groupoid();
  const double lmin = length.min_positive();
  if (!std::isfinite(lmin)) return s;
  const int k = 1;
  const double p = 0.5;
  const double n = std::max(1.0, lmin);
  const double bound = diameter_bound(length, k, p, n, rd_constant);
  DistanceOptions o;
  o.k = k;
  for (int t = 0; t < 4; ++t) {
    const State mu = random_state(G, rng());
    const State nu = random_same_fibre_state(mu, rng());
    const auto cert = connes_distance(length, mu, nu, o);
    s.at_most(cert.upper, bound, o.tol);
  }
  return s;
}

}  // namespace

Json verify_suite(const GroupoidSpec& spec, std::uint64_t seed, int threads) {
  const auto& G = spec.groupoid;
  std::mt19937_64 rng(seed);
  Json suites;
  suites["groupoid"] = groupoid_suite(G).json();
  suites["length"] = length_suite(spec.length).json();
  suites["convolution"] = convolution_suite(G, rng, 10).json();
  suites["norms"] = norm_suite(G, rng, 20).json();
  suites["dirac"] = dirac_suite(spec.length, rng, 10).json();
  suites["sobolev_bound"] = sobolev_bound_suite(spec.length, rng, 50).json();
  suites["states"] = state_suite(G, rng, 10).json();
  suites["metric"] = metric_suite(spec.length, rng).json();
  RdReport rd(G);
  suites["rapid_decay"] = rd_suite(spec.length, seed, threads, rng, rd).json();
  suites["diameter"] = diameter_suite(spec.length, rd.empirical_c, rng).json();

  int checks = 0;
  int failures = 0;
  for (const auto& [name, suite] : suites.items()) {
    checks += suite["checks"].get<int>();
    failures += suite["failures"].get<int>();
  }
  return {{"seed", seed},
          {"group_order", G.order()},
          {"space_size", G.space_size()},
          {"suites", suites},
          {"total_checks", checks},
          {"total_failures", failures},
          {"passed", failures == 0}};
}

bool verify_passed(const Json& report) { return report.value("passed", false); }

}  // namespace gqml::app

#include "gqml/rapid_decay.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gqml/errors.hpp"
#include "parallel.hpp"

namespace gqml {

double rd_ratio(const LengthFunction& length, const AlgebraElement& f, double p) {
  if (sup_norm(f) == 0.0) throw Error(ErrorKind::ZeroElement, "the ratio is undefined at f = 0");
  return reduced_norm(f) / sobolev_norm(length, f, p);
}

AlgebraElement truncate(const LengthFunction& length, const AlgebraElement& f, double n) {
  const Ball b = ball(length, n);
  AlgebraElement out(f.groupoid());
  for (int g : b.group_subset) {
    for (int x = 0; x < f.groupoid().space_size(); ++x) out(g, x) = f(g, x);
  }
  return out;
}

double tail_norm(const LengthFunction& length, const AlgebraElement& f, double n) {
  return reduced_norm(f - truncate(length, f, n));
}

namespace {

// Greedy complex coordinate search. Returns the improved element and its ratio.
std::pair<AlgebraElement, double> hill_climb(const LengthFunction& length, AlgebraElement f,
                                             double ratio, double p, int steps) {
  double s = 0.5 * sup_norm(f);
  const Complex dirs[] = {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
  for (int step = 0; step < steps && s > 0.0; ++step) {
    bool improved = false;
    for (int i = 0; i < f.size(); ++i) {
      for (const Complex& d : dirs) {
        const Complex old = f.flat(i);
        f.flat(i) = old + s * d;
        const double r = sup_norm(f) == 0.0 ? 0.0 : rd_ratio(length, f, p);
        if (r > ratio) {
          ratio = r;
          improved = true;
        } else {
          f.flat(i) = old;
        }
      }
    }
    if (!improved) s *= 0.5;
  }
  return {std::move(f), ratio};
}

}  // namespace

RdReport empirical_rd_constant(const LengthFunction& length, const RdOptions& options) {
  if (options.samples < 1) throw Error(ErrorKind::InvalidArgument, "samples must be at least 1");
  if (!(options.p > 0.0)) throw Error(ErrorKind::BadExponent, "p must be positive");
  if (options.hill_steps < 0) throw Error(ErrorKind::InvalidArgument, "hill_steps must be non-negative");
  const auto& G = length.groupoid();

  std::vector<AlgebraElement> sample;
  sample.push_back(unit_element(G));
  for (int i = 0; i < G.size(); ++i) sample.push_back(AlgebraElement::delta(G, G.arrow(i)));
  std::mt19937_64 rng(options.seed);
  for (std::int64_t s = 0; s < options.samples; ++s) sample.push_back(AlgebraElement::random(G, rng));

  // Tail thresholds: 0 and every distinct length value.
  std::vector<double> ns{0.0};
  for (const auto& row : length.values()) ns.insert(ns.end(), row.begin(), row.end());
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

  const auto count = static_cast<std::int64_t>(sample.size());
  std::vector<double> ratios(count);
  std::vector<std::vector<double>> tails(count);
  detail::parallel_for(count, options.threads, [&](std::int64_t i) {
    ratios[i] = rd_ratio(length, sample[i], options.p);
    tails[i].reserve(ns.size());
    for (double n : ns) tails[i].push_back(tail_norm(length, sample[i], n));
  });

  // First index wins ties.
  std::int64_t best = 0;
  for (std::int64_t i = 1; i < count; ++i) {
    if (ratios[i] > ratios[best]) best = i;
  }

  RdReport report(G);
  report.p = options.p;
  report.sample_count = count;
  report.sampled_c = ratios[best];
  auto [climbed, c] = hill_climb(length, sample[best], ratios[best], options.p, options.hill_steps);
  report.empirical_c = c;
  report.argmax = std::move(climbed);
  for (std::size_t j = 0; j < ns.size(); ++j) {
    TailEntry entry{ns[j], 0.0};
    for (std::int64_t i = 0; i < count; ++i) entry.tail = std::max(entry.tail, tails[i][j]);
    report.tail_table.push_back(entry);
  }
  return report;
}

}  // namespace gqml

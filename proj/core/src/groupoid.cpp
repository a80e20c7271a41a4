#include "gqml/groupoid.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "gqml/errors.hpp"

namespace gqml {

namespace {

std::string ptr(std::initializer_list<std::string> parts) {
  std::string out;
  for (const auto& p : parts) {
    out += '/';
    out += p;
  }
  return out;
}

std::string str(int v) { return std::to_string(v); }

// Relative slack used when comparing real-valued lengths.
double length_slack(double a, double b) {
  return 1e-12 * (1.0 + std::abs(a) + std::abs(b));
}

}  // namespace

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup::FiniteGroup(Table cayley, int identity, std::vector<int> inverses)
    : cayley_(std::move(cayley)), identity_(identity), inverses_(std::move(inverses)) {
  validate();
}

void FiniteGroup::validate() const {
  const int n = order();
  if (n <= 0) throw Error(ErrorKind::ShapeMismatch, "group order must be positive", "/group/cayley");
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(cayley_[a].size()) != n) {
      throw Error(ErrorKind::ShapeMismatch, "Cayley row " + str(a) + " has wrong length",
                  ptr({"group", "cayley", str(a)}));
    }
    for (int b = 0; b < n; ++b) {
      if (cayley_[a][b] < 0 || cayley_[a][b] >= n) {
        throw Error(ErrorKind::InvalidArgument, "Cayley entry out of range",
                    ptr({"group", "cayley", str(a), str(b)}), {a, b});
      }
    }
  }
  if (identity_ < 0 || identity_ >= n) {
    throw Error(ErrorKind::BadIdentity, "identity index out of range", "/group/identity");
  }
  if (static_cast<int>(inverses_.size()) != n) {
    throw Error(ErrorKind::ShapeMismatch, "inverse table has wrong length", "/group/inverses");
  }
  for (int g = 0; g < n; ++g) {
    if (cayley_[identity_][g] != g) {
      throw Error(ErrorKind::BadIdentity, "e*g != g for g = " + str(g),
                  ptr({"group", "cayley", str(identity_), str(g)}), {identity_, g});
    }
    if (cayley_[g][identity_] != g) {
      throw Error(ErrorKind::BadIdentity, "g*e != g for g = " + str(g),
                  ptr({"group", "cayley", str(g), str(identity_)}), {g, identity_});
    }
  }
  for (int g = 0; g < n; ++g) {
    const int inv = inverses_[g];
    if (inv < 0 || inv >= n || cayley_[g][inv] != identity_ || cayley_[inv][g] != identity_) {
      throw Error(ErrorKind::BadInverse, "inverses[" + str(g) + "] is not an inverse of " + str(g),
                  ptr({"group", "inverses", str(g)}), {g, inv});
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const int ab = cayley_[a][b];
      for (int c = 0; c < n; ++c) {
        if (cayley_[ab][c] != cayley_[a][cayley_[b][c]]) {
          throw Error(ErrorKind::NonAssociative,
                      "(ab)c != a(bc) for (a,b,c) = (" + str(a) + "," + str(b) + "," + str(c) + ")",
                      ptr({"group", "cayley", str(ab), str(c)}), {a, b, c});
        }
      }
    }
  }
}

FiniteGroup FiniteGroup::cyclic(int order) {
  if (order <= 0) throw Error(ErrorKind::InvalidArgument, "cyclic group order must be positive");
  Table cayley(order, std::vector<int>(order));
  std::vector<int> inverses(order);
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) cayley[a][b] = (a + b) % order;
    inverses[a] = (order - a) % order;
  }
  return FiniteGroup(std::move(cayley), 0, std::move(inverses));
}

FiniteGroup FiniteGroup::symmetric(int degree) {
  if (degree <= 0 || degree > 6) {
    throw Error(ErrorKind::InvalidArgument, "symmetric group degree must be in 1..6");
  }
  std::vector<std::vector<int>> perms;
  std::vector<int> p(degree);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const int n = static_cast<int>(perms.size());
  auto find = [&](const std::vector<int>& q) {
    return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  Table cayley(n, std::vector<int>(n));
  std::vector<int> inverses(n);
  std::vector<int> q(degree);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      // (ab)(i) = a(b(i)): apply b first.
      for (int i = 0; i < degree; ++i) q[i] = perms[a][perms[b][i]];
      cayley[a][b] = find(q);
    }
    for (int i = 0; i < degree; ++i) q[perms[a][i]] = i;
    inverses[a] = find(q);
  }
  FiniteGroup group(std::move(cayley), 0, std::move(inverses));
  group.permutations_ = std::move(perms);
  return group;
}

FiniteGroup FiniteGroup::product(const FiniteGroup& lhs, const FiniteGroup& rhs) {
  const int m = rhs.order();
  const int n = lhs.order() * m;
  Table cayley(n, std::vector<int>(n));
  std::vector<int> inverses(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      cayley[a][b] = lhs.multiply(a / m, b / m) * m + rhs.multiply(a % m, b % m);
    }
    inverses[a] = lhs.inverse(a / m) * m + rhs.inverse(a % m);
  }
  return FiniteGroup(std::move(cayley), lhs.identity() * m + rhs.identity(), std::move(inverses));
}

const std::vector<int>& FiniteGroup::permutation(int g) const {
  static const std::vector<int> kEmpty;
  if (permutations_.empty()) return kEmpty;
  return permutations_[g];
}

// ---------------------------------------------------------------------------
// TransformationGroupoid

TransformationGroupoid::TransformationGroupoid(FiniteGroup group, int space_size, Table action) {
  const int n = group.order();
  if (space_size <= 0) {
    throw Error(ErrorKind::InvalidArgument, "space size must be positive", "/space/size");
  }
  if (static_cast<int>(action.size()) != n) {
    throw Error(ErrorKind::ShapeMismatch, "action table must have one row per group element",
                "/action");
  }
  for (int g = 0; g < n; ++g) {
    if (static_cast<int>(action[g].size()) != space_size) {
      throw Error(ErrorKind::ShapeMismatch, "action row " + str(g) + " has wrong length",
                  ptr({"action", str(g)}));
    }
    std::vector<char> hit(space_size, 0);
    for (int x = 0; x < space_size; ++x) {
      const int y = action[g][x];
      if (y < 0 || y >= space_size) {
        throw Error(ErrorKind::NotAnAction, "g.x out of range", ptr({"action", str(g), str(x)}),
                    {g, x});
      }
      if (hit[y]) {
        throw Error(ErrorKind::NotAnAction,
                    "element " + str(g) + " does not act as a bijection",
                    ptr({"action", str(g), str(x)}), {g, x});
      }
      hit[y] = 1;
    }
  }
  const int e = group.identity();
  for (int x = 0; x < space_size; ++x) {
    if (action[e][x] != x) {
      throw Error(ErrorKind::NotAnAction, "identity does not fix point " + str(x),
                  ptr({"action", str(e), str(x)}), {e, x});
    }
  }
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      const int gh = group.multiply(g, h);
      for (int x = 0; x < space_size; ++x) {
        if (action[g][action[h][x]] != action[gh][x]) {
          throw Error(ErrorKind::NotAnAction,
                      "g.(h.x) != (gh).x for (g,h,x) = (" + str(g) + "," + str(h) + "," + str(x) +
                          ")",
                      ptr({"action", str(gh), str(x)}), {g, h, x});
        }
      }
    }
  }
  auto entries = compute_fibre_entries(group, space_size, action);
  data_ = std::make_shared<const Data>(
      Data{std::move(group), space_size, std::move(action), std::move(entries)});
}

TransformationGroupoid TransformationGroupoid::group_only(FiniteGroup group) {
  Table action(group.order(), std::vector<int>{0});
  return TransformationGroupoid(std::move(group), 1, std::move(action));
}

TransformationGroupoid TransformationGroupoid::natural_action(FiniteGroup group) {
  if (group.permutation(0).empty()) {
    throw Error(ErrorKind::InvalidArgument, "group carries no permutation representation");
  }
  const int degree = static_cast<int>(group.permutation(0).size());
  Table action(group.order());
  for (int g = 0; g < group.order(); ++g) action[g] = group.permutation(g);
  return TransformationGroupoid(std::move(group), degree, std::move(action));
}

std::vector<int> TransformationGroupoid::compute_fibre_entries(const FiniteGroup& group,
                                                               int space_size,
                                                               const Table& action) {
  const int n = group.order();
  std::vector<int> entries(static_cast<std::size_t>(space_size) * n * n);
  for (int x = 0; x < space_size; ++x) {
    for (int g = 0; g < n; ++g) {
      for (int h = 0; h < n; ++h) {
        const int gh_inv = group.multiply(g, group.inverse(h));
        entries[(static_cast<std::size_t>(x) * n + g) * n + h] = gh_inv * space_size + action[h][x];
      }
    }
  }
  return entries;
}

Arrow TransformationGroupoid::compose(Arrow lhs, Arrow rhs) const {
  if (!composable(lhs, rhs)) {
    throw Error(ErrorKind::InvalidArgument, "arrows are not composable");
  }
  return {group().multiply(lhs.g, rhs.g), rhs.x};
}

TransformationGroupoid TransformationGroupoid::with_fibre_entries(std::vector<int> entries) const {
  if (entries != data_->fibre_entries) {
    throw Error(ErrorKind::ShapeMismatch, "fibre entry table does not match this groupoid");
  }
  return TransformationGroupoid(std::make_shared<const Data>(
      Data{data_->group, data_->space_size, data_->action, std::move(entries)}));
}

bool TransformationGroupoid::same_as(const TransformationGroupoid& other) const noexcept {
  if (data_ == other.data_) return true;
  return data_->space_size == other.data_->space_size &&
         data_->group.identity() == other.data_->group.identity() &&
         data_->group.cayley() == other.data_->group.cayley() &&
         data_->action == other.data_->action;
}

// ---------------------------------------------------------------------------
// LengthFunction

double LengthFunction::min_positive() const {
  double best = std::numeric_limits<double>::infinity();
  const int e = groupoid_.identity();
  for (int g = 0; g < groupoid_.order(); ++g) {
    if (g == e) continue;
    for (double v : values_[g]) best = std::min(best, v);
  }
  return best;
}

double LengthFunction::max_value() const {
  double best = 0.0;
  for (const auto& row : values_) {
    for (double v : row) best = std::max(best, v);
  }
  return best;
}

LengthFunction LengthFunction::scaled(double t) const {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "scale factor must be positive");
  RealTable values = values_;
  for (auto& row : values) {
    for (auto& v : row) v *= t;
  }
  return LengthFunction(groupoid_, std::move(values));
}

LengthFunction validate_length(const TransformationGroupoid& groupoid, RealTable values) {
  const int n = groupoid.order();
  const int m = groupoid.space_size();
  const int e = groupoid.identity();
  if (static_cast<int>(values.size()) != n) {
    throw Error(ErrorKind::ShapeMismatch, "length table must have one row per group element",
                "/length/values");
  }
  for (int g = 0; g < n; ++g) {
    if (static_cast<int>(values[g].size()) != m) {
      throw Error(ErrorKind::ShapeMismatch, "length row " + str(g) + " has wrong length",
                  ptr({"length", "values", str(g)}));
    }
    for (int x = 0; x < m; ++x) {
      const double v = values[g][x];
      if (!std::isfinite(v) || v < 0.0) {
        throw Error(ErrorKind::InvalidArgument, "length values must be finite and non-negative",
                    ptr({"length", "values", str(g), str(x)}), {g, x});
      }
    }
  }
  // (1) vanishes exactly on units
  for (int g = 0; g < n; ++g) {
    for (int x = 0; x < m; ++x) {
      if ((values[g][x] == 0.0) != (g == e)) {
        throw Error(ErrorKind::ZeroSetWrong,
                    g == e ? "length is nonzero on a unit" : "length vanishes off the units",
                    ptr({"length", "values", str(g), str(x)}), {g, x});
      }
    }
  }
  // (2) ℓ(g⁻¹, g·x) = ℓ(g, x)
  for (int g = 0; g < n; ++g) {
    for (int x = 0; x < m; ++x) {
      const Arrow inv = groupoid.inverse({g, x});
      const double a = values[g][x];
      const double b = values[inv.g][inv.x];
      if (std::abs(a - b) > length_slack(a, b)) {
        throw Error(ErrorKind::NotSymmetric,
                    "l(g,x) != l(g^-1, g.x) for (g,x) = (" + str(g) + "," + str(x) + ")",
                    ptr({"length", "values", str(g), str(x)}), {g, x});
      }
    }
  }
  // (3) ℓ(gh, x) ≤ ℓ(g, h·x) + ℓ(h, x)
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      const int gh = groupoid.group().multiply(g, h);
      for (int x = 0; x < m; ++x) {
        const double lhs = values[gh][x];
        const double rhs = values[g][groupoid.act(h, x)] + values[h][x];
        if (lhs > rhs + length_slack(lhs, rhs)) {
          throw Error(ErrorKind::NotSubadditive,
                      "l(gh,x) > l(g,h.x) + l(h,x) for (g,h,x) = (" + str(g) + "," + str(h) + "," +
                          str(x) + ")",
                      ptr({"length", "values", str(gh), str(x)}), {g, h, x});
        }
      }
    }
  }
  return LengthFunction(groupoid, std::move(values));
}

LengthFunction word_length(const TransformationGroupoid& groupoid, const std::vector<int>& generators,
                           const std::vector<double>& weights) {
  const FiniteGroup& group = groupoid.group();
  const int n = group.order();
  std::vector<double> w = weights.empty() ? std::vector<double>(generators.size(), 1.0) : weights;
  if (w.size() != generators.size()) {
    throw Error(ErrorKind::InvalidArgument, "one weight per generator is required",
                "/length/weights");
  }
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const int s = generators[i];
    if (s < 0 || s >= n) {
      throw Error(ErrorKind::InvalidArgument, "generator index out of range",
                  ptr({"length", "generators", str(static_cast<int>(i))}));
    }
    if (!(w[i] > 0.0) || !std::isfinite(w[i])) {
      throw Error(ErrorKind::InvalidArgument, "generator weights must be positive",
                  ptr({"length", "weights", str(static_cast<int>(i))}));
    }
  }
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const int inv = group.inverse(generators[i]);
    bool found = false;
    for (std::size_t j = 0; j < generators.size(); ++j) {
      if (generators[j] == inv && std::abs(w[j] - w[i]) <= length_slack(w[i], w[j])) found = true;
    }
    if (!found) {
      throw Error(ErrorKind::InvalidArgument,
                  "generating set must be closed under inverses with symmetric weights",
                  ptr({"length", "generators", str(static_cast<int>(i))}));
    }
  }

  // Dijkstra from the identity along right multiplication.
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[group.identity()] = 0.0;
  queue.push({0.0, group.identity()});
  while (!queue.empty()) {
    const auto [d, g] = queue.top();
    queue.pop();
    if (d > dist[g]) continue;
    for (std::size_t i = 0; i < generators.size(); ++i) {
      const int next = group.multiply(g, generators[i]);
      const double nd = d + w[i];
      if (nd < dist[next]) {
        dist[next] = nd;
        queue.push({nd, next});
      }
    }
  }
  for (int g = 0; g < n; ++g) {
    if (!std::isfinite(dist[g])) {
      throw Error(ErrorKind::NotGenerating, "element " + str(g) + " is not reachable",
                  "/length/generators", {g});
    }
  }
  RealTable values(n, std::vector<double>(groupoid.space_size()));
  for (int g = 0; g < n; ++g) std::fill(values[g].begin(), values[g].end(), dist[g]);
  return validate_length(groupoid, std::move(values));
}

// ---------------------------------------------------------------------------
// Ball

bool Ball::contains(int g) const {
  return std::binary_search(group_subset.begin(), group_subset.end(), g);
}

Ball ball(const LengthFunction& length, double n) {
  const auto& groupoid = length.groupoid();
  Ball out;
  out.n = n;
  for (int g = 0; g < groupoid.order(); ++g) {
    bool inside = g == groupoid.identity();
    for (int x = 0; x < groupoid.space_size() && !inside; ++x) inside = length.at(g, x) <= n;
    if (inside) out.group_subset.push_back(g);
  }
  return out;
}

}  // namespace gqml

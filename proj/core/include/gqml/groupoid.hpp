#pragma once

#include <compare>
#include <memory>
#include <vector>

namespace gqml {

using Table = std::vector<std::vector<int>>;
using RealTable = std::vector<std::vector<double>>;

/// A finite group given by its Cayley table. Elements are indices 0..order-1.
class FiniteGroup {
 public:
  /// Validates identity, inverse and associativity axioms exhaustively.
  /// Throws Error{BadIdentity | BadInverse | NonAssociative | ShapeMismatch}.
  FiniteGroup(Table cayley, int identity, std::vector<int> inverses);

  static FiniteGroup cyclic(int order);
  /// Symmetric group on `degree` letters; element indices follow the
  /// lexicographic order of permutations, so index 0 is the identity.
  static FiniteGroup symmetric(int degree);
  /// Direct product; element (a, b) has index a * rhs.order() + b.
  static FiniteGroup product(const FiniteGroup& lhs, const FiniteGroup& rhs);

  int order() const noexcept { return static_cast<int>(cayley_.size()); }
  int identity() const noexcept { return identity_; }
  int multiply(int a, int b) const { return cayley_[a][b]; }
  int inverse(int g) const { return inverses_[g]; }
  const Table& cayley() const noexcept { return cayley_; }
  const std::vector<int>& inverses() const noexcept { return inverses_; }

  /// Permutation realised by element g when built by symmetric(); empty otherwise.
  const std::vector<int>& permutation(int g) const;

 private:
  FiniteGroup() = default;
  void validate() const;

  Table cayley_;
  int identity_ = 0;
  std::vector<int> inverses_;
  std::vector<std::vector<int>> permutations_;
};

/// One arrow (g, x) of the transformation groupoid: source x, range g.x.
struct Arrow {
  int g = 0;
  int x = 0;
  auto operator<=>(const Arrow&) const = default;
};

/// The transformation groupoid of a finite group acting on a finite set.
/// Immutable and cheap to copy; copies share the same underlying tables.
class TransformationGroupoid {
 public:
  /// Throws Error{NotAnAction | ShapeMismatch | InvalidArgument}.
  TransformationGroupoid(FiniteGroup group, int space_size, Table action);

  /// Trivial action on a one-point space (the group algebra case).
  static TransformationGroupoid group_only(FiniteGroup group);
  /// A permutation group acting on {0..degree-1} through FiniteGroup::permutation.
  static TransformationGroupoid natural_action(FiniteGroup group);

  const FiniteGroup& group() const noexcept { return data_->group; }
  int order() const noexcept { return data_->group.order(); }
  int space_size() const noexcept { return data_->space_size; }
  /// Number of arrows, |Γ|·|X|.
  int size() const noexcept { return order() * space_size(); }
  int identity() const noexcept { return data_->group.identity(); }

  int act(int g, int x) const { return data_->action[g][x]; }
  const Table& action() const noexcept { return data_->action; }

  int index(Arrow a) const noexcept { return a.g * space_size() + a.x; }
  Arrow arrow(int flat) const noexcept { return {flat / space_size(), flat % space_size()}; }

  int range(Arrow a) const { return act(a.g, a.x); }
  int source(Arrow a) const noexcept { return a.x; }
  Arrow unit(int x) const noexcept { return {identity(), x}; }
  bool is_unit(Arrow a) const noexcept { return a.g == identity(); }
  Arrow inverse(Arrow a) const { return {group().inverse(a.g), act(a.g, a.x)}; }
  bool composable(Arrow lhs, Arrow rhs) const { return source(lhs) == range(rhs); }
  /// (g, h.x)(h, x) = (gh, x). Throws Error{InvalidArgument} when not composable.
  Arrow compose(Arrow lhs, Arrow rhs) const;

  /// Flat index of the arrow (g h^-1, h.x): the entry feeding row g, column h
  /// of the regular representation on the source fibre over x.
  int fibre_entry(int x, int g, int h) const {
    return data_->fibre_entries[(static_cast<std::size_t>(x) * order() + g) * order() + h];
  }
  const std::vector<int>& fibre_entries() const noexcept { return data_->fibre_entries; }

  /// Replaces the fibre entry table with a precomputed one (e.g. from an on-disk
  /// cache). Throws Error{ShapeMismatch} unless it equals the computed table.
  TransformationGroupoid with_fibre_entries(std::vector<int> entries) const;

  bool same_as(const TransformationGroupoid& other) const noexcept;

 private:
  struct Data {
    FiniteGroup group;
    int space_size;
    Table action;
    std::vector<int> fibre_entries;
  };
  explicit TransformationGroupoid(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  static std::vector<int> compute_fibre_entries(const FiniteGroup& group, int space_size,
                                                const Table& action);

  std::shared_ptr<const Data> data_;
};

/// A validated length function ℓ(g, x). Properness is automatic for finite
/// groupoids and is not checked.
class LengthFunction {
 public:
  const TransformationGroupoid& groupoid() const noexcept { return groupoid_; }
  double operator()(Arrow a) const { return values_[a.g][a.x]; }
  double at(int g, int x) const { return values_[g][x]; }
  const RealTable& values() const noexcept { return values_; }

  /// min{ℓ(g,x) : g ≠ e}; +inf for the trivial group.
  double min_positive() const;
  double max_value() const;

  /// Same groupoid, ℓ multiplied by t > 0.
  LengthFunction scaled(double t) const;

 private:
  friend LengthFunction validate_length(const TransformationGroupoid&, RealTable);
  LengthFunction(TransformationGroupoid groupoid, RealTable values)
      : groupoid_(std::move(groupoid)), values_(std::move(values)) {}

  TransformationGroupoid groupoid_;
  RealTable values_;
};

/// Checks the three length axioms over every arrow and composable pair.
/// Throws Error{ShapeMismatch | InvalidArgument | ZeroSetWrong | NotSymmetric |
/// NotSubadditive}; pointers refer to "/length/values/g/x".
LengthFunction validate_length(const TransformationGroupoid& groupoid, RealTable values);

/// Weighted word length: shortest path from the identity in the right Cayley
/// graph g -> g s, constant in x. Throws Error{NotGenerating} when some
/// element is unreachable, Error{InvalidArgument} for a non-symmetric
/// generating set, mismatched or non-positive weights.
LengthFunction word_length(const TransformationGroupoid& groupoid, const std::vector<int>& generators,
                           const std::vector<double>& weights = {});

struct Ball {
  double n = 0.0;
  std::vector<int> group_subset;  // sorted element indices Γ_n
  bool contains(int g) const;
};

/// Γ_n = {g : ℓ(g,x) ≤ n for some x} ∪ {e}.
Ball ball(const LengthFunction& length, double n);

}  // namespace gqml

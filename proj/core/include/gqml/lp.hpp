#pragma once

#include <vector>

#include <Eigen/Dense>

namespace gqml {

/// Master problem of a cutting-plane method:
///
///     maximize c·θ  subject to  lower ≤ θ ≤ upper,  a_j·θ ≤ b_j  (j = cuts)
///
/// Solved by a dual simplex over bases of d active constraints. The box makes
/// the initial basis dual feasible, and adding a cut keeps it dual feasible,
/// so every re-solve is a warm start from the previous optimum.
class CuttingPlaneLp {
 public:
  CuttingPlaneLp(Eigen::VectorXd objective, Eigen::VectorXd lower, Eigen::VectorXd upper);

  void add_cut(const Eigen::VectorXd& row, double rhs);

  struct Solution {
    Eigen::VectorXd point;
    double value = 0.0;
    /// b·y + |c − Aᵀy|·|box| for the clipped dual y ≥ 0: an upper bound on the
    /// LP optimum that does not rely on the primal solve being exact.
    double certified_bound = 0.0;
    int pivots = 0;
  };

  /// Throws Error{Internal} if the pivot limit is hit or the polytope is empty.
  Solution solve();

  int dimension() const noexcept { return static_cast<int>(objective_.size()); }
  int cut_count() const noexcept { return static_cast<int>(rows_.size()) - 2 * dimension(); }

 private:
  Eigen::VectorXd objective_;
  Eigen::VectorXd box_radius_;
  std::vector<Eigen::VectorXd> rows_;
  std::vector<double> rhs_;
  std::vector<int> basis_;
  std::vector<char> in_basis_;
};

}  // namespace gqml

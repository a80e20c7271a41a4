#include "gqml/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gqml/errors.hpp"

namespace gqml {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr int kBlandAfter = 50;  // consecutive degenerate pivots before Bland's rule
// Relative primal feasibility tolerance. Nearly parallel cuts make the basis
// ill-conditioned, and a tighter value lets round-off swap two such cuts back
// and forth forever. Callers never rely on primal exactness: they re-evaluate
// the true objective at the returned point and take upper bounds from the dual.
constexpr double kFeasTol = 1e-9;

}  // namespace

CuttingPlaneLp::CuttingPlaneLp(Eigen::VectorXd objective, Eigen::VectorXd lower,
                               Eigen::VectorXd upper)
    : objective_(std::move(objective)) {
  const Eigen::Index d = objective_.size();
  if (lower.size() != d || upper.size() != d) {
    throw Error(ErrorKind::InvalidArgument, "box dimensions do not match the objective");
  }
  box_radius_.resize(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (!(lower(i) <= upper(i))) throw Error(ErrorKind::InvalidArgument, "empty box");
    box_radius_(i) = std::max(std::abs(lower(i)), std::abs(upper(i)));
    Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
    e(i) = 1.0;
    rows_.push_back(e);
    rhs_.push_back(upper(i));
    rows_.push_back(-e);
    rhs_.push_back(-lower(i));
  }
  // θ_i sits on whichever bound the objective pushes it to.
  for (Eigen::Index i = 0; i < d; ++i) {
    basis_.push_back(static_cast<int>(objective_(i) >= 0.0 ? 2 * i : 2 * i + 1));
  }
  in_basis_.assign(rows_.size(), 0);
  for (int r : basis_) in_basis_[r] = 1;
}

void CuttingPlaneLp::add_cut(const Eigen::VectorXd& row, double rhs) {
  if (row.size() != objective_.size()) {
    throw Error(ErrorKind::InvalidArgument, "cut dimension does not match the objective");
  }
  rows_.push_back(row);
  rhs_.push_back(rhs);
  in_basis_.push_back(0);
}

CuttingPlaneLp::Solution CuttingPlaneLp::solve() {
  const int d = dimension();
  Solution sol;
  if (d == 0) {
    sol.point = Eigen::VectorXd();
    return sol;
  }
  const int max_pivots = 50 * (static_cast<int>(rows_.size()) + d) + 1000;
  int degenerate_run = 0;
  int last_left = -1;

  Eigen::MatrixXd basis_matrix(d, d);
  Eigen::VectorXd basis_rhs(d);
  Eigen::VectorXd theta;
  Eigen::VectorXd dual;
  Eigen::MatrixXd inverse;

  for (int pivot = 0;; ++pivot) {
    if (pivot > max_pivots) throw Error(ErrorKind::Internal, "LP pivot limit exceeded");
    for (int j = 0; j < d; ++j) {
      basis_matrix.row(j) = rows_[basis_[j]].transpose();
      basis_rhs(j) = rhs_[basis_[j]];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(basis_matrix);
    if (!lu.isInvertible()) throw Error(ErrorKind::Internal, "singular LP basis");
    inverse = lu.inverse();
    theta = inverse * basis_rhs;
    dual = inverse.transpose() * objective_;

    const bool bland = degenerate_run >= kBlandAfter;
    int entering = -1;
    double worst = 0.0;
    for (int r = 0; r < static_cast<int>(rows_.size()); ++r) {
      if (in_basis_[r]) continue;
      const double norm = std::max(1.0, rows_[r].norm());
      const double scale = 1.0 + std::abs(rhs_[r]);
      const double violation = (rows_[r].dot(theta) - rhs_[r]) / norm;
      if (violation <= kFeasTol * scale) continue;
      // Re-entering the row that just left means round-off is driving the pivots.
      if (r == last_left && violation <= 1e3 * kFeasTol * scale) continue;
      if (bland) {
        entering = r;
        break;
      }
      if (violation > worst) {
        worst = violation;
        entering = r;
      }
    }
    if (entering < 0) {
      sol.pivots = pivot;
      break;
    }

    // rows_[entering] = Σ_j w_j rows_[basis_j]
    const Eigen::VectorXd w = inverse.transpose() * rows_[entering];
    int leaving = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    double best_w = 0.0;
    for (int j = 0; j < d; ++j) {
      if (w(j) <= kPivotTol) continue;
      const double ratio = std::max(dual(j), 0.0) / w(j);
      const bool better =
          leaving < 0 || ratio < best_ratio - 1e-15 ||
          (ratio <= best_ratio + 1e-15 && (bland ? basis_[j] < basis_[leaving] : w(j) > best_w));
      if (better) {
        leaving = j;
        best_ratio = ratio;
        best_w = w(j);
      }
    }
    if (leaving < 0) throw Error(ErrorKind::Internal, "LP is infeasible");
    degenerate_run = best_ratio <= 1e-15 ? degenerate_run + 1 : 0;
    last_left = basis_[leaving];
    in_basis_[basis_[leaving]] = 0;
    basis_[leaving] = entering;
    in_basis_[entering] = 1;
  }

  sol.point = theta;
  sol.value = objective_.dot(theta);
  Eigen::VectorXd residual = objective_;
  double bound = 0.0;
  for (int j = 0; j < d; ++j) {
    const double y = std::max(dual(j), 0.0);
    residual -= y * rows_[basis_[j]];
    bound += y * rhs_[basis_[j]];
  }
  for (int i = 0; i < d; ++i) bound += std::abs(residual(i)) * box_radius_(i);
  sol.certified_bound = bound;
  return sol;
}

}  // namespace gqml

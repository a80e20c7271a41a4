#include "gqml/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace gqml {

namespace {

Eigen::SelfAdjointEigenSolver<ComplexMatrix> gram_eigen(const ComplexMatrix& m) {
  const ComplexMatrix gram = m.adjoint() * m;
  return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(gram);
}

}  // namespace

double spectral_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  const auto solver = gram_eigen(m);
  const double top = solver.eigenvalues()(solver.eigenvalues().size() - 1);
  return std::sqrt(std::max(top, 0.0));
}

std::vector<SingularPair> singular_pairs_above(const ComplexMatrix& m, double threshold) {
  std::vector<SingularPair> pairs;
  if (m.size() == 0) return pairs;
  const auto solver = gram_eigen(m);
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();
  for (Eigen::Index i = values.size() - 1; i >= 0; --i) {
    const double sigma = std::sqrt(std::max(values(i), 0.0));
    if (sigma <= threshold) break;
    SingularPair pair;
    pair.value = sigma;
    pair.right = vectors.col(i);
    if (sigma > 0.0) {
      pair.left = (m * pair.right) / sigma;
    } else {
      pair.left = ComplexVector::Zero(m.rows());
      pair.left(0) = 1.0;
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

SingularPair top_singular_pair(const ComplexMatrix& m) {
  auto pairs = singular_pairs_above(m, -1.0);
  return pairs.front();
}

double min_hermitian_eigenvalue(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  const ComplexMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

}  // namespace gqml

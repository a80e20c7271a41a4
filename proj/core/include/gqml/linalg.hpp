#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace gqml {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

struct SingularPair {
  double value = 0.0;
  ComplexVector left;   // u with M v = value * u
  ComplexVector right;  // v
};

// Spectral norms go through the Hermitian square M^H M and a symmetric
// eigensolver; there is no general SVD path in the library.
double spectral_norm(const ComplexMatrix& m);

/// Singular pairs of `m` with singular value strictly above `threshold`,
/// largest first. Always returns at least the top pair for a non-empty matrix
/// when `threshold` is negative.
std::vector<SingularPair> singular_pairs_above(const ComplexMatrix& m, double threshold);

SingularPair top_singular_pair(const ComplexMatrix& m);

/// Smallest eigenvalue of the Hermitian part of `m`.
double min_hermitian_eigenvalue(const ComplexMatrix& m);

}  // namespace gqml

// Dense symmetric linear algebra and eigenvalue-moment functionals.
//
// Conventions used throughout the library:
//   * eigenvalues are returned in descending order;
//   * each eigenvector is sign-fixed so that its largest-magnitude component
//     is positive (first such index on ties), which makes every downstream
//     resampling scheme deterministic;
//   * symmetric inputs are symmetrized ((A + A') / 2) rather than rejected,
//     since all producers are symmetric up to roundoff.
#pragma once

#include <Eigen/Dense>

#include "subdim/rng.hpp"

namespace subdim {

struct EigenSystem {
  Eigen::VectorXd values;   // descending
  Eigen::MatrixXd vectors;  // orthonormal columns, sign-fixed
};

// First two moments and variance of a set of eigenvalues:
// m1 = mean, m2 = mean of squares, s2 = m2 - m1^2.
struct MomentTriple {
  double m1 = 0.0;
  double m2 = 0.0;
  double s2 = 0.0;
};

Eigen::MatrixXd symmetrized(const Eigen::Ref<const Eigen::MatrixXd>& a);

// Eigen-decomposition of a symmetric matrix. Throws InvalidInput on
// non-finite entries or a clearly asymmetric matrix.
EigenSystem sym_eigen(const Eigen::Ref<const Eigen::MatrixXd>& a);

// Moments of the eigenvalues computed from traces only:
// m1 = tr(A)/p and m2 = tr(A^2)/p with tr(A^2) = sum_ij A_ij^2.
MomentTriple matrix_moments(const Eigen::Ref<const Eigen::MatrixXd>& a);

// Moments of an explicit set of values (used on eigenvalue subsets).
MomentTriple vector_moments(const Eigen::Ref<const Eigen::VectorXd>& v);

// U D^e U' with the symmetric convention. Requires positive definiteness
// (smallest eigenvalue > 1e-12 * largest); throws SingularMatrix otherwise.
Eigen::MatrixXd sym_power(const Eigen::Ref<const Eigen::MatrixXd>& a, double exponent);

// Draw from the Haar distribution on the orthogonal group O(dim):
// QR of an iid standard normal matrix with the R-diagonal sign correction.
Eigen::MatrixXd haar_orthogonal(Eigen::Index dim, RngStream& rng);

}  // namespace subdim

#include "subdim/linalg.hpp"

#include <cmath>

#include "subdim/errors.hpp"

namespace subdim {

namespace {

void require_finite(const Eigen::Ref<const Eigen::MatrixXd>& a, const char* who) {
  if (!a.allFinite()) throw InvalidInput(std::string(who) + ": non-finite entries");
}

void require_square(const Eigen::Ref<const Eigen::MatrixXd>& a, const char* who) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw InvalidInput(std::string(who) + ": matrix must be square and non-empty");
}

void fix_column_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
      const double mag = std::abs(vectors(i, j));
      if (mag > best) {  // strict comparison keeps the lowest index on ties
        best = mag;
        pivot = i;
      }
    }
    if (vectors(pivot, j) < 0.0) vectors.col(j) = -vectors.col(j);
  }
}

}  // namespace

Eigen::MatrixXd symmetrized(const Eigen::Ref<const Eigen::MatrixXd>& a) {
  require_square(a, "symmetrized");
  return 0.5 * (a + a.transpose());
}

EigenSystem sym_eigen(const Eigen::Ref<const Eigen::MatrixXd>& a) {
  require_square(a, "sym_eigen");
  require_finite(a, "sym_eigen");
  const double scale = 1.0 + a.cwiseAbs().maxCoeff();
  if (((a - a.transpose()).cwiseAbs().maxCoeff()) > 1e-8 * scale)
    throw InvalidInput("sym_eigen: matrix is not symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetrized(a));
  if (solver.info() != Eigen::Success) throw InvalidInput("sym_eigen: eigensolver failed");

  EigenSystem sys;
  sys.values = solver.eigenvalues().reverse();
  sys.vectors = solver.eigenvectors().rowwise().reverse();
  fix_column_signs(sys.vectors);
  return sys;
}

MomentTriple matrix_moments(const Eigen::Ref<const Eigen::MatrixXd>& a) {
  require_square(a, "matrix_moments");
  require_finite(a, "matrix_moments");
  const double p = static_cast<double>(a.rows());
  MomentTriple m;
  m.m1 = a.trace() / p;
  m.m2 = a.squaredNorm() / p;  // tr(A^2) = sum A_ij^2 for symmetric A
  m.s2 = m.m2 - m.m1 * m.m1;
  return m;
}

MomentTriple vector_moments(const Eigen::Ref<const Eigen::VectorXd>& v) {
  if (v.size() == 0) throw InvalidInput("vector_moments: empty value set");
  const double p = static_cast<double>(v.size());
  MomentTriple m;
  m.m1 = v.sum() / p;
  m.m2 = v.squaredNorm() / p;
  m.s2 = m.m2 - m.m1 * m.m1;
  return m;
}

Eigen::MatrixXd sym_power(const Eigen::Ref<const Eigen::MatrixXd>& a, double exponent) {
  const EigenSystem sys = sym_eigen(a);
  const double largest = sys.values(0);
  const double smallest = sys.values(sys.values.size() - 1);
  if (!(largest > 0.0) || smallest <= 1e-12 * largest)
    throw SingularMatrix("sym_power: matrix is not numerically positive definite");
  Eigen::VectorXd powered = sys.values.array().pow(exponent).matrix();
  return symmetrized(sys.vectors * powered.asDiagonal() * sys.vectors.transpose());
}

Eigen::MatrixXd haar_orthogonal(Eigen::Index dim, RngStream& rng) {
  if (dim < 1) throw InvalidInput("haar_orthogonal: dim must be >= 1");
  const Eigen::MatrixXd gauss = rng.normal_matrix(dim, dim);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gauss);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

}  // namespace subdim

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "subdim/errors.hpp"
#include "subdim/linalg.hpp"
#include "subdim/rng.hpp"

using namespace subdim;

namespace {

// Independent oracle: roots of the characteristic polynomial of a symmetric
// 3x3 matrix via the trigonometric solution of the depressed cubic.
// lambda^3 - c2 lambda^2 + c1 lambda - c0 with lambda = t + c2/3 gives
// t^3 + p t + q, all roots real for symmetric input.
std::vector<double> char_poly_roots_3x3(const Eigen::Matrix3d& a) {
  const double c2 = a.trace();
  const double c1 = 0.5 * (c2 * c2 - (a * a).trace());
  const double c0 = a.determinant();
  const double p = c1 - c2 * c2 / 3.0;
  const double q = -2.0 * c2 * c2 * c2 / 27.0 + c1 * c2 / 3.0 - c0;
  std::vector<double> roots(3);
  if (p > -1e-14) {  // (near) triple root
    roots.assign(3, c2 / 3.0);
  } else {
    const double radius = 2.0 * std::sqrt(-p / 3.0);
    const double cosine = std::clamp(3.0 * q / (p * radius), -1.0, 1.0);
    const double theta = std::acos(cosine);
    for (int k = 0; k < 3; ++k)
      roots[k] = radius * std::cos(theta / 3.0 - 2.0 * std::numbers::pi * k / 3.0) + c2 / 3.0;
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

Eigen::MatrixXd random_symmetric(int p, RngStream& rng) {
  return symmetrized(rng.normal_matrix(p, p));
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("sym_eigen on the identity") {
  const EigenSystem sys = sym_eigen(Eigen::MatrixXd::Identity(3, 3));
  for (int i = 0; i < 3; ++i) CHECK(sys.values(i) == doctest::Approx(1.0));
}

TEST_CASE("sym_eigen closed-form 2x2") {
  Eigen::MatrixXd a(2, 2);
  a << 2, 1, 1, 2;
  const EigenSystem sys = sym_eigen(a);
  CHECK(sys.values(0) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(sys.values(1) == doctest::Approx(1.0).epsilon(1e-12));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(sys.vectors(0, 0) == doctest::Approx(inv_sqrt2));
  CHECK(sys.vectors(1, 0) == doctest::Approx(inv_sqrt2));
  // sign convention: first of the tied largest-magnitude entries positive
  CHECK(sys.vectors(0, 1) == doctest::Approx(inv_sqrt2));
  CHECK(sys.vectors(1, 1) == doctest::Approx(-inv_sqrt2));
}

TEST_CASE("sym_eigen of an already diagonal spectrum") {
  Eigen::VectorXd d(6);
  d << 3, 2, 2, 1, 1, 1;
  const EigenSystem sys = sym_eigen(Eigen::MatrixXd(d.asDiagonal()));
  for (int i = 0; i < 6; ++i) CHECK(sys.values(i) == doctest::Approx(d(i)));
}

TEST_CASE("sym_eigen rejects non-finite input") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
  a(0, 1) = a(1, 0) = std::nan("");
  CHECK_THROWS_AS(sym_eigen(a), InvalidInput);
}

TEST_CASE("sym_eigen matches characteristic-polynomial roots on random 3x3") {
  RngStream rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Matrix3d a = random_symmetric(3, rng);
    const EigenSystem sys = sym_eigen(a);
    const std::vector<double> roots = char_poly_roots_3x3(a);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(sys.values(i) - roots[i]) < 1e-8);
  }
}

TEST_CASE("EigenSystem invariants: order, orthonormality, reconstruction") {
  RngStream rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int p = 2 + static_cast<int>(rng.uniform_index(7));
    const Eigen::MatrixXd a = random_symmetric(p, rng);
    const EigenSystem sys = sym_eigen(a);
    for (int i = 0; i + 1 < p; ++i) CHECK(sys.values(i) >= sys.values(i + 1));
    const Eigen::MatrixXd gram = sys.vectors.transpose() * sys.vectors;
    CHECK((gram - Eigen::MatrixXd::Identity(p, p)).cwiseAbs().maxCoeff() < 1e-8);
    const Eigen::MatrixXd rebuilt =
        sys.vectors * sys.values.asDiagonal() * sys.vectors.transpose();
    const double radius = sys.values.cwiseAbs().maxCoeff();
    CHECK((rebuilt - a).cwiseAbs().maxCoeff() < 1e-8 * std::max(1.0, radius));
  }
}

TEST_CASE("matrix_moments basics") {
  const MomentTriple ident = matrix_moments(Eigen::MatrixXd::Identity(5, 5));
  CHECK(ident.m1 == doctest::Approx(1.0));
  CHECK(ident.m2 == doctest::Approx(1.0));
  CHECK(ident.s2 == doctest::Approx(0.0));

  Eigen::VectorXd d(2);
  d << 3, 1;
  const MomentTriple two = matrix_moments(Eigen::MatrixXd(d.asDiagonal()));
  CHECK(two.m1 == doctest::Approx(2.0));
  CHECK(two.m2 == doctest::Approx(5.0));
  CHECK(two.s2 == doctest::Approx(1.0));
}

TEST_CASE("matrix_moments two-eigenvalue variance identity") {
  // s^2 of two values a, b equals ((a - b) / 2)^2
  const double a = 36213.91, b = 25865.65;
  Eigen::VectorXd d(2);
  d << a, b;
  const MomentTriple m = matrix_moments(Eigen::MatrixXd(d.asDiagonal()));
  const double expected = (a - b) / 2.0 * ((a - b) / 2.0);
  CHECK(m.s2 == doctest::Approx(expected).epsilon(1e-10));
  CHECK(m.s2 == doctest::Approx(2.6771e7).epsilon(1e-3));
}

TEST_CASE("moment triple internal consistency and trace invariance") {
  RngStream rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const int p = 2 + static_cast<int>(rng.uniform_index(6));
    const Eigen::MatrixXd a = random_symmetric(p, rng);
    const MomentTriple m = matrix_moments(a);
    CHECK(m.s2 == doctest::Approx(m.m2 - m.m1 * m.m1).epsilon(1e-12));
    CHECK(m.s2 >= -1e-12);
    const Eigen::MatrixXd o = haar_orthogonal(p, rng);
    const MomentTriple rotated = matrix_moments(symmetrized(o.transpose() * a * o));
    CHECK(std::abs(rotated.m1 - m.m1) < 1e-10 * std::max(1.0, std::abs(m.m1)));
    CHECK(std::abs(rotated.m2 - m.m2) < 1e-10 * std::max(1.0, m.m2));
    CHECK(std::abs(rotated.s2 - m.s2) < 1e-10 * std::max(1.0, m.s2));
  }
}

TEST_CASE("s2 vanishes exactly for multiples of the identity and only for them") {
  RngStream rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    const double c = 0.5 + rng.uniform() * 4.0;
    const int p = 2 + static_cast<int>(rng.uniform_index(5));
    CHECK(matrix_moments(c * Eigen::MatrixXd::Identity(p, p)).s2 <= 1e-8);

    // a rotated equal spectrum must come back as a multiple of the identity
    const Eigen::MatrixXd o = haar_orthogonal(p, rng);
    const Eigen::MatrixXd near_identity =
        symmetrized(o * (c * Eigen::MatrixXd::Identity(p, p)) * o.transpose());
    const MomentTriple m = matrix_moments(near_identity);
    CHECK(m.s2 <= 1e-8);
    CHECK((near_identity - m.m1 * Eigen::MatrixXd::Identity(p, p)).cwiseAbs().maxCoeff() < 1e-8);

    // while a spread spectrum has s2 > 0
    Eigen::VectorXd spread(p);
    for (int i = 0; i < p; ++i) spread(i) = 1.0 + i;
    CHECK(matrix_moments(symmetrized(o * spread.asDiagonal() * o.transpose())).s2 > 1e-8);
  }
}

TEST_CASE("sym_power basics") {
  CHECK((sym_power(Eigen::MatrixXd::Identity(4, 4), 0.5) - Eigen::MatrixXd::Identity(4, 4))
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  CHECK((sym_power(Eigen::MatrixXd::Identity(4, 4), -1.0) - Eigen::MatrixXd::Identity(4, 4))
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  Eigen::VectorXd d(2);
  d << 4, 9;
  const Eigen::MatrixXd root = sym_power(Eigen::MatrixXd(d.asDiagonal()), 0.5);
  CHECK(root(0, 0) == doctest::Approx(2.0));
  CHECK(root(1, 1) == doctest::Approx(3.0));
  CHECK(std::abs(root(0, 1)) < 1e-12);

  Eigen::MatrixXd a(2, 2);
  a << 2, 1, 1, 2;
  const Eigen::MatrixXd inv_root = sym_power(a, -0.5);
  CHECK((inv_root * a * inv_root - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() <
        1e-10);
}

TEST_CASE("sym_power rejects non-positive-definite input") {
  Eigen::VectorXd d(2);
  d << 1, -1;
  CHECK_THROWS_AS(sym_power(Eigen::MatrixXd(d.asDiagonal()), 0.5), SingularMatrix);
  CHECK_THROWS_AS(sym_power(Eigen::MatrixXd::Zero(3, 3), -1.0), SingularMatrix);
}

TEST_CASE("haar_orthogonal in dimension one is a fair sign") {
  RngStream rng(55);
  int plus = 0;
  const int draws = 4000;
  for (int i = 0; i < draws; ++i) {
    const Eigen::MatrixXd o = haar_orthogonal(1, rng);
    CHECK(std::abs(std::abs(o(0, 0)) - 1.0) < 1e-14);
    if (o(0, 0) > 0) ++plus;
  }
  const double freq = static_cast<double>(plus) / draws;
  CHECK(freq > 0.45);
  CHECK(freq < 0.55);
}

TEST_CASE("haar_orthogonal is orthogonal to near machine precision") {
  RngStream rng(56);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXd o = haar_orthogonal(5, rng);
    CHECK((o.transpose() * o - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("haar_orthogonal first column is uniform on the sphere (moments)") {
  RngStream rng(57);
  const int draws = 100000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double coord = haar_orthogonal(3, rng)(0, 0);
    sum += coord;
    sum_sq += coord * coord;
  }
  CHECK(std::abs(sum / draws) < 3.0 / std::sqrt(static_cast<double>(draws)));
  CHECK(std::abs(sum_sq / draws - 1.0 / 3.0) < 0.01);
}

TEST_CASE("haar draws composed with a fixed rotation look like fresh draws") {
  // two-sample Kolmogorov-Smirnov on the (0,0) entry, 1% level
  RngStream rng_q(58);
  const Eigen::MatrixXd q = haar_orthogonal(3, rng_q);
  const int draws = 10000;
  std::vector<double> composed(draws), fresh(draws);
  RngStream rng_a(59), rng_b(60);
  for (int i = 0; i < draws; ++i) {
    composed[i] = (haar_orthogonal(3, rng_a) * q)(0, 0);
    fresh[i] = haar_orthogonal(3, rng_b)(0, 0);
  }
  std::sort(composed.begin(), composed.end());
  std::sort(fresh.begin(), fresh.end());
  double ks = 0.0;
  std::size_t ia = 0, ib = 0;
  while (ia < composed.size() && ib < fresh.size()) {
    if (composed[ia] <= fresh[ib])
      ++ia;
    else
      ++ib;
    ks = std::max(ks, std::abs(static_cast<double>(ia) / draws -
                               static_cast<double>(ib) / draws));
  }
  const double critical = 1.6276 * std::sqrt(2.0 / draws);  // alpha = 0.01
  CHECK(ks < critical);
}

}  // TEST_SUITE

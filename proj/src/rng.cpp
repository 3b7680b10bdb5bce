#include "subdim/rng.hpp"

#include <cmath>
#include <numbers>

#include "subdim/errors.hpp"

namespace subdim {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  // Chained finalizers; distinct (a, b) paths land in distinct states.
  return mix64(mix64(mix64(seed) ^ (a + 0x9e3779b97f4a7c15ULL)) ^ (b + 0x7f4a7c159e3779b9ULL));
}

double RngStream::uniform() {
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_open() {
  return 1.0 - uniform();
}

std::size_t RngStream::uniform_index(std::size_t n) {
  if (n == 0) throw InvalidInput("uniform_index: n must be >= 1");
  // Rejection over the last partial block keeps the draw unbiased.
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  for (;;) {
    const std::uint64_t x = gen_();
    const std::uint64_t r = x % bound;
    if (x - r <= std::uint64_t(-1) - (bound - 1)) return static_cast<std::size_t>(r);
  }
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform_open();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

double RngStream::exponential() {
  return -std::log(uniform_open());
}

double RngStream::chi_square(int df) {
  if (df < 1) throw InvalidInput("chi_square: df must be >= 1");
  double sum = 0.0;
  for (int i = 0; i < df; ++i) {
    const double z = normal();
    sum += z * z;
  }
  return sum;
}

double RngStream::student_t(int df) {
  return normal() / std::sqrt(chi_square(df) / static_cast<double>(df));
}

Eigen::VectorXd RngStream::normal_vector(Eigen::Index n) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = normal();
  return v;
}

Eigen::MatrixXd RngStream::normal_matrix(Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = normal();
  return m;
}

}  // namespace subdim

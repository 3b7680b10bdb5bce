// Seeded random streams with a counter-style split construction.
//
// Every stochastic routine in the library takes an RngStream owned by the
// caller. Independent streams are derived from a master seed and one or two
// stream indices, so replicate i always sees the same draws no matter how
// work is scheduled across threads. All variate transforms are implemented
// here on top of std::mt19937_64 (whose output sequence is fixed by the
// standard); none of the implementation-defined std <random> distributions
// are used, keeping runs byte-reproducible across platforms.
#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <random>

namespace subdim {

// SplitMix64 finalizer; bijective 64-bit mixing.
std::uint64_t mix64(std::uint64_t x);

// Derives an independent stream seed from (seed, a, b).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(mix64(seed)) {}
  RngStream(std::uint64_t master_seed, std::uint64_t stream, std::uint64_t substream = 0)
      : gen_(derive_seed(master_seed, stream, substream)) {}

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform();
  // Uniform on (0, 1]; safe as a log() argument.
  double uniform_open();
  // Unbiased integer in {0, ..., n-1}, n >= 1.
  std::size_t uniform_index(std::size_t n);

  double normal();       // standard normal (Box-Muller, cached pair)
  double exponential();  // rate 1
  double chi_square(int df);
  double student_t(int df);

  Eigen::VectorXd normal_vector(Eigen::Index n);
  // Filled in row-major order so the draw sequence matches row-wise data generation.
  Eigen::MatrixXd normal_matrix(Eigen::Index rows, Eigen::Index cols);

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace subdim

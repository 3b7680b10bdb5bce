// Scatter-matrix and companion-location functionals at the empirical
// distribution, the sigma_1 plug-in, and the SIR slice machinery.
//
// All covariances use the 1/n divisor; that keeps the Pillai identity
// n * p * m1(S1^-1 S2) exact for the slice-based between scatter.
#pragma once

#include <Eigen/Dense>

#include "subdim/data.hpp"
#include "subdim/linalg.hpp"

namespace subdim {

enum class ScatterKind { cov, tyler_full, tyler_kstep };

struct ScatterEstimate {
  ScatterKind kind = ScatterKind::cov;
  Eigen::VectorXd location;
  Eigen::MatrixXd matrix;  // positive definite in non-degenerate use
  int iterations = 0;
  bool converged = true;
  int steps = 0;  // requested step count for tyler_kstep
};

// Sample mean and 1/n covariance.
ScatterEstimate mean_cov(const DataTable& x);

// Minimizer of sum_i ||x_i - mu|| (Weiszfeld iteration with the standard
// data-point safeguard). Throws ConvergenceFailure after 500 iterations.
Eigen::VectorXd spatial_median(const DataTable& x);

struct TylerOptions {
  bool full = true;       // iterate to tolerance; otherwise exactly k_steps updates
  int k_steps = 3;
  Eigen::MatrixXd init;   // required when full == false; default init is the
                          // trace-rescaled covariance
  double tolerance = 1e-8;
  int max_iterations = 200;
};

// Tyler's shape matrix about a fixed location, trace-normalized to p after
// every update. In k-step mode `converged` reports whether the tolerance was
// also met.
ScatterEstimate tyler_shape(const DataTable& x, const Eigen::VectorXd& location,
                            const TylerOptions& options = {});

// Scatter matrix of fourth moments: (1/n) sum r_i^2 (x_i - mu)(x_i - mu)'
// with r_i^2 the squared Mahalanobis radius with respect to s1.
Eigen::MatrixXd fourth_moment_scatter(const DataTable& x, const ScatterEstimate& s1);

// Plug-in estimate sigma_1 = E alpha^2(r) / (p (p + 2)): alpha(r) = r^2 for
// the covariance; alpha(r) = p + 2 (constant) for Tyler kinds, where the
// value (p + 2) / p is exact.
double sigma1_hat(const DataTable& x, const ScatterEstimate& s);

struct SliceAssignment {
  int slice_count = 0;
  Eigen::VectorXd boundaries;  // slice_count - 1 ascending cut points
  std::vector<int> labels;     // per observation, 0-based slice index
  std::vector<int> counts;     // per slice, all >= 1
};

// Slices at the empirical quantiles i/H (inverse-CDF convention); a value
// equal to a boundary goes to the lower slice. Throws InsufficientVariation
// when fewer than H distinct values exist or a slice would come out empty.
SliceAssignment make_slices(const Eigen::Ref<const Eigen::VectorXd>& y, int slice_count);

// Between-slice scatter (1/n) sum_h n_h (xbar_h - xbar)(xbar_h - xbar)'.
Eigen::MatrixXd sir_between_scatter(const DataTable& x, const SliceAssignment& slices);

// Applies a slice assignment derived from fixed boundaries to a new response
// vector (used when bootstrap replicates freeze the original slices); empty
// slices are allowed here and simply contribute nothing downstream.
SliceAssignment apply_slice_boundaries(const Eigen::Ref<const Eigen::VectorXd>& y,
                                       const Eigen::VectorXd& boundaries);

}  // namespace subdim

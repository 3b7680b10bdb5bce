// Sliced-inverse-regression dimension tests: slice-based between scatter,
// the mean of the smallest eigenvalues as statistic, its chi-squared
// asymptotics, and the joint (y, signal) / independent noise bootstrap.
#pragma once

#include "subdim/bootstrap.hpp"
#include "subdim/data.hpp"
#include "subdim/linalg.hpp"
#include "subdim/scatter.hpp"

namespace subdim {

struct SirFit {
  Eigen::VectorXd mean;
  Eigen::MatrixXd s1;        // covariance (1/n)
  Eigen::MatrixXd s2;        // between-slice scatter
  Eigen::MatrixXd r;         // S1^{-1/2} S2 S1^{-1/2}
  Eigen::VectorXd values;    // descending, in [0, 1] up to roundoff
  Eigen::MatrixXd vectors;
  Eigen::MatrixXd unmixing;  // W = U' S1^{-1/2}
  SliceAssignment slices;
  int slice_count = 0;
};

struct SirTestResult {
  int k = 0;
  double statistic = 0.0;  // T_k, mean of the p - k smallest eigenvalues
  int df = 0;              // (p - k)(H - k - 1)
  double p_value = 1.0;
  TestMode mode = TestMode::asymptotic;  // boot_I denotes the SIR bootstrap
  int replicates = 0;
  int slice_count = 0;
  long n = 0;
  int p = 0;
  std::vector<std::string> warnings;
};

struct SirBootOptions {
  // Recompute slice boundaries on each replicate's y* (default), or freeze
  // the original-sample boundaries for sensitivity analysis.
  bool freeze_slices = false;
};

SirFit sir_fit(const DataTable& x, const Eigen::Ref<const Eigen::VectorXd>& y, int slice_count);

// Mean of the p - k smallest eigenvalues; zero whenever k >= H - 1.
double sir_Tk(const SirFit& fit, int k);

SirTestResult sir_asymp_pvalue(const DataTable& x, const Eigen::Ref<const Eigen::VectorXd>& y,
                               int k, int slice_count);

// Jointly resamples (y, signal coordinates) and, independently, the noise
// coordinates; the encoded null has (y, z1) independent of z2 exactly.
std::pair<Eigen::VectorXd, DataTable> sir_resample(const DataTable& x,
                                                   const Eigen::Ref<const Eigen::VectorXd>& y,
                                                   int k, const SirFit& fit, RngStream& rng);

SirTestResult sir_boot_pvalue(const DataTable& x, const Eigen::Ref<const Eigen::VectorXd>& y,
                              int k, int slice_count, const BootstrapConfig& config,
                              const SirBootOptions& options = {});

}  // namespace subdim

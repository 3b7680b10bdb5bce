// Subsphericity tests for PCA: the tail-eigenvalue statistics T_k, V_k, L_k,
// their chi-squared asymptotics, and the PCA-I / PCA-II bootstrap null
// resamplers.
#pragma once

#include <optional>

#include "subdim/bootstrap.hpp"
#include "subdim/data.hpp"
#include "subdim/linalg.hpp"
#include "subdim/scatter.hpp"

namespace subdim {

enum class PcaScatter { cov, tyler, tyler3 };
enum class PcaStatistic { T, L };

struct PcaFit {
  ScatterEstimate scatter;
  EigenSystem eigen;  // of scatter.matrix, descending
};

struct PcaTestResult {
  int k = 0;
  double statistic = 0.0;   // raw T_k (or L_k)
  PcaStatistic statistic_kind = PcaStatistic::T;
  double d_hat = 0.0;       // mean of the p - k smallest eigenvalues
  double sigma1 = 0.0;
  int df = 0;               // (p - k - 1)(p - k + 2) / 2
  double p_value = 1.0;
  TestMode mode = TestMode::asymptotic;
  int replicates = 0;       // M, 0 for asymptotic
  PcaScatter scatter_kind = PcaScatter::cov;
  long n = 0;
  int p = 0;
  std::vector<std::string> warnings;
};

struct PcaBootOptions {
  // Tyler scatter inside replicates: 3-step fixed point started from the
  // original-sample estimate by default; full iteration on request.
  bool full_tyler_in_replicates = false;
  PcaStatistic statistic = PcaStatistic::T;
};

// Eigensystem of the chosen scatter about its companion location
// (covariance/mean, Tyler shape/spatial median, or its 3-step version).
PcaFit pca_fit(const DataTable& x, PcaScatter kind);

// Variance of the p - k smallest eigenvalues; T_{p-1} = 0 by definition.
double pca_Tk(const PcaFit& fit, int k);

// Minimum eigenvalue variance over all size-(p-k) subsets; for sorted values
// the minimizing subset is a contiguous window.
double pca_Vk(const PcaFit& fit, int k);

// log(arithmetic mean / geometric mean) of the p - k smallest eigenvalues.
double pca_Lk(const PcaFit& fit, int k);

// Noise and signal projections (P_k from the p - k smallest eigenvectors,
// Q_k = I - P_k); they satisfy P_k S Q_k = 0.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> pca_projections(const PcaFit& fit, int k);

PcaTestResult pca_asymp_pvalue(const DataTable& x, int k, PcaScatter kind,
                               PcaStatistic statistic = PcaStatistic::T);

// PCA-I: resample whitened rows, rotate each by an independent Haar matrix,
// and color with the spectrum whose tail is averaged (elliptical null).
DataTable pca_resample_I(const DataTable& x, int k, const PcaFit& fit, RngStream& rng);

// PCA-II: resample rows and rotate only the noise-subspace coordinates
// (subspherical null, no full ellipticity).
DataTable pca_resample_II(const DataTable& x, int k, const PcaFit& fit, RngStream& rng);

PcaTestResult pca_boot_pvalue(const DataTable& x, int k, PcaScatter kind, TestMode mode,
                              const BootstrapConfig& config, const PcaBootOptions& options = {});

}  // namespace subdim

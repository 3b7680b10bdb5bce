// Non-Gaussian component count via FOBI: the fourth-moment eigenvalue
// deviations from p + 2, the weighted chi-squared mixture asymptotics, and
// the FOBI-I / FOBI-II bootstrap null resamplers.
#pragma once

#include "subdim/bootstrap.hpp"
#include "subdim/data.hpp"
#include "subdim/linalg.hpp"
#include "subdim/scatter.hpp"

namespace subdim {

enum class FobiVariant { ica, ngca };

struct FobiFit {
  Eigen::VectorXd mean;
  Eigen::MatrixXd s1;        // covariance (1/n)
  Eigen::MatrixXd s2;        // fourth-moment scatter
  Eigen::MatrixXd r;         // S1^{-1/2} S2 S1^{-1/2}
  Eigen::VectorXd values;    // eigenvalues of r, ordered by (d - (p+2))^2 descending
  Eigen::MatrixXd vectors;   // matching eigenvectors
  Eigen::MatrixXd unmixing;  // W = U' S1^{-1/2}; W S1 W' = I
};

struct FobiTestResult {
  int k = 0;
  double statistic = 0.0;  // T_k, mean squared deviation of the closest p - k eigenvalues
  FobiVariant variant = FobiVariant::ica;
  double sigma1 = 0.0;
  double sigma2 = 4.0;
  double mix_a = 0.0;      // 2 sigma1
  int mix_df_a = 0;        // (p - k - 1)(p - k + 2) / 2
  double mix_b = 0.0;      // 2 sigma1 + 4 (p - k)
  double p_value = 1.0;
  TestMode mode = TestMode::asymptotic;
  int replicates = 0;
  long n = 0;
  int p = 0;
  std::vector<std::string> warnings;
};

FobiFit fobi_fit(const DataTable& x);

// Mean of (d_i - (p+2))^2 over the p - k eigenvalues closest to p + 2.
double fobi_Tk(const FobiFit& fit, int k);

// sigma_1 estimates from the unmixed coordinates z_i = W (x_i - mean):
// ica:  (1/n) sum_i sum_j z_ij^4 - p + 8
// ngca: (1/n) sum_i ||z_i||^4 - p^2 + 8
// Clipped below at 1e-6 (tiny samples can push the moment estimate
// nonpositive); a warning is appended when clipping happens.
double fobi_sigma1(const DataTable& x, const FobiFit& fit, FobiVariant variant,
                   std::vector<std::string>* warnings = nullptr);

FobiTestResult fobi_asymp_pvalue(const DataTable& x, int k, FobiVariant variant);

// FOBI-I (IC model): componentwise bootstrap of the k signal coordinates,
// fresh standard normal noise coordinates.
DataTable fobi_resample_I(const DataTable& x, int k, const FobiFit& fit, RngStream& rng);

// FOBI-II (NGCA model): row bootstrap with the noise-space component replaced
// by a fresh Gaussian vector in the estimated geometry.
DataTable fobi_resample_II(const DataTable& x, int k, const FobiFit& fit, RngStream& rng);

FobiTestResult fobi_boot_pvalue(const DataTable& x, int k, FobiVariant variant, TestMode mode,
                                const BootstrapConfig& config);

}  // namespace subdim

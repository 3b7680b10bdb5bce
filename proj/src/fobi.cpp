#include "subdim/fobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "subdim/dist.hpp"
#include "subdim/errors.hpp"

namespace subdim {

namespace {

void check_k(const FobiFit& fit, int k) {
  const int p = static_cast<int>(fit.values.size());
  if (k < 0 || k > p - 1)
    throw InvalidK("fobi: k = " + std::to_string(k) + " outside [0, " + std::to_string(p - 1) +
                   "]");
}

double gaussian_reference(int p) { return static_cast<double>(p) + 2.0; }

}  // namespace

FobiFit fobi_fit(const DataTable& x) {
  if (x.n() <= x.p()) throw InvalidInput("fobi_fit: need n > p");
  const int p = static_cast<int>(x.p());

  FobiFit fit;
  const ScatterEstimate cov = mean_cov(x);
  fit.mean = cov.location;
  fit.s1 = cov.matrix;
  fit.s2 = fourth_moment_scatter(x, cov);
  const Eigen::MatrixXd root_inverse = sym_power(fit.s1, -0.5);
  fit.r = symmetrized(root_inverse * fit.s2 * root_inverse);

  const EigenSystem eigen = sym_eigen(fit.r);
  const double reference = gaussian_reference(p);
  // Order by squared deviation from p + 2, largest first; ties put the larger
  // eigenvalue first so fits are deterministic.
  std::vector<int> order(static_cast<std::size_t>(p));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int lhs, int rhs) {
    const double dl = (eigen.values(lhs) - reference) * (eigen.values(lhs) - reference);
    const double dr = (eigen.values(rhs) - reference) * (eigen.values(rhs) - reference);
    if (dl != dr) return dl > dr;
    return eigen.values(lhs) > eigen.values(rhs);
  });
  fit.values.resize(p);
  fit.vectors.resize(p, p);
  for (int j = 0; j < p; ++j) {
    fit.values(j) = eigen.values(order[static_cast<std::size_t>(j)]);
    fit.vectors.col(j) = eigen.vectors.col(order[static_cast<std::size_t>(j)]);
  }
  fit.unmixing = fit.vectors.transpose() * root_inverse;
  return fit;
}

double fobi_Tk(const FobiFit& fit, int k) {
  check_k(fit, k);
  const Eigen::Index p = fit.values.size();
  const double reference = gaussian_reference(static_cast<int>(p));
  // Deviation-descending order puts the p - k smallest squared deviations last.
  const Eigen::ArrayXd tail = fit.values.segment(k, p - k).array() - reference;
  return tail.square().mean();
}

double fobi_sigma1(const DataTable& x, const FobiFit& fit, FobiVariant variant,
                   std::vector<std::string>* warnings) {
  const double p = static_cast<double>(x.p());
  const Eigen::MatrixXd unmixed =
      (x.rows().rowwise() - fit.mean.transpose()) * fit.unmixing.transpose();
  double estimate = 0.0;
  if (variant == FobiVariant::ica) {
    estimate = unmixed.array().pow(4).sum() / static_cast<double>(x.n()) - p + 8.0;
  } else {
    estimate = unmixed.rowwise().squaredNorm().array().square().mean() - p * p + 8.0;
  }
  if (estimate < 1e-6) {
    if (warnings)
      warnings->push_back("sigma1 moment estimate " + std::to_string(estimate) +
                          " clipped to 1e-6; sample too small for stable fourth moments");
    estimate = 1e-6;
  }
  return estimate;
}

FobiTestResult fobi_asymp_pvalue(const DataTable& x, int k, FobiVariant variant) {
  const FobiFit fit = fobi_fit(x);
  check_k(fit, k);
  const int p = static_cast<int>(x.p());
  const long n = static_cast<long>(x.n());

  FobiTestResult result;
  result.k = k;
  result.variant = variant;
  result.mode = TestMode::asymptotic;
  result.n = n;
  result.p = p;
  result.statistic = fobi_Tk(fit, k);
  result.sigma1 = fobi_sigma1(x, fit, variant, &result.warnings);
  result.mix_a = 2.0 * result.sigma1;
  result.mix_df_a = (p - k - 1) * (p - k + 2) / 2;
  result.mix_b = 2.0 * result.sigma1 + 4.0 * (p - k);

  const double scaled = n * (p - k) * result.statistic;
  result.p_value = weighted_chisq_mix_sf(scaled, result.mix_a, result.mix_df_a, result.mix_b);
  return result;
}

DataTable fobi_resample_I(const DataTable& x, int k, const FobiFit& fit, RngStream& rng) {
  const Eigen::Index n = x.n();
  const Eigen::Index p = x.p();
  if (k < 0 || k > p) throw InvalidK("fobi_resample_I: k outside [0, p]");

  const Eigen::MatrixXd unmixed =
      (x.rows().rowwise() - fit.mean.transpose()) * fit.unmixing.transpose();
  Eigen::MatrixXd sampled(n, p);
  // Signal coordinates: each column resampled independently with replacement.
  for (Eigen::Index j = 0; j < k; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      sampled(i, j) = unmixed(static_cast<Eigen::Index>(rng.uniform_index(n)), j);
  // Noise coordinates: exact standard normals.
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = k; j < p; ++j) sampled(i, j) = rng.normal();

  // x = W^{-1} z + mean with W^{-1} = S1^{1/2} U, i.e. X* = Z* U' S1^{1/2}.
  const Eigen::MatrixXd mixed =
      sampled * fit.vectors.transpose() * sym_power(fit.s1, 0.5);
  return DataTable((mixed.rowwise() + fit.mean.transpose()).eval(), x.column_names());
}

DataTable fobi_resample_II(const DataTable& x, int k, const FobiFit& fit, RngStream& rng) {
  const Eigen::Index n = x.n();
  const Eigen::Index p = x.p();
  if (k < 0 || k > p) throw InvalidK("fobi_resample_II: k outside [0, p]");

  const Eigen::MatrixXd root = sym_power(fit.s1, 0.5);
  const Eigen::MatrixXd root_inverse = sym_power(fit.s1, -0.5);
  const Eigen::MatrixXd noise_vectors = fit.vectors.rightCols(p - k);
  // Oblique projections with respect to the Mahalanobis inner product.
  const Eigen::MatrixXd noise_projection =
      root * noise_vectors * noise_vectors.transpose() * root_inverse;
  const Eigen::MatrixXd signal_projection =
      Eigen::MatrixXd::Identity(p, p) - noise_projection;
  const Eigen::MatrixXd noise_basis = root * noise_vectors;

  Eigen::MatrixXd resampled(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index pick = static_cast<Eigen::Index>(rng.uniform_index(n));
    const Eigen::VectorXd centered = x.rows().row(pick).transpose() - fit.mean;
    Eigen::VectorXd replaced = signal_projection * centered;
    if (k < p) replaced += noise_basis * rng.normal_vector(p - k);
    resampled.row(i) = (replaced + fit.mean).transpose();
  }
  return DataTable(std::move(resampled), x.column_names());
}

FobiTestResult fobi_boot_pvalue(const DataTable& x, int k, FobiVariant variant, TestMode mode,
                                const BootstrapConfig& config) {
  if (mode == TestMode::asymptotic) return fobi_asymp_pvalue(x, k, variant);
  const FobiFit fit = fobi_fit(x);
  check_k(fit, k);
  const double observed = fobi_Tk(fit, k);

  const auto score = [&](RngStream& rng) {
    const DataTable replicate = mode == TestMode::boot_I ? fobi_resample_I(x, k, fit, rng)
                                                         : fobi_resample_II(x, k, fit, rng);
    return fobi_Tk(fobi_fit(replicate), k);
  };
  const BootstrapPvalue boot = bootstrap_pvalue(observed, score, config);

  FobiTestResult result;
  result.k = k;
  result.statistic = observed;
  result.variant = variant;
  result.sigma1 = fobi_sigma1(x, fit, variant, &result.warnings);
  result.mix_a = 2.0 * result.sigma1;
  result.mix_df_a = (static_cast<int>(x.p()) - k - 1) * (static_cast<int>(x.p()) - k + 2) / 2;
  result.mix_b = 2.0 * result.sigma1 + 4.0 * (static_cast<int>(x.p()) - k);
  result.p_value = boot.p_hat;
  result.mode = mode;
  result.replicates = config.replicates;
  result.n = static_cast<long>(x.n());
  result.p = static_cast<int>(x.p());
  return result;
}

}  // namespace subdim

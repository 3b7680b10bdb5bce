#include "subdim/sir.hpp"

#include <cmath>

#include "subdim/dist.hpp"
#include "subdim/errors.hpp"

namespace subdim {

namespace {

void check_k(int p, int k) {
  if (k < 0 || k > p - 1)
    throw InvalidK("sir: k = " + std::to_string(k) + " outside [0, " + std::to_string(p - 1) +
                   "]");
}

SirFit fit_with_slices(const DataTable& x, const SliceAssignment& slices) {
  SirFit fit;
  const ScatterEstimate cov = mean_cov(x);
  fit.mean = cov.location;
  fit.s1 = cov.matrix;
  fit.s2 = sir_between_scatter(x, slices);
  const Eigen::MatrixXd root_inverse = sym_power(fit.s1, -0.5);
  fit.r = symmetrized(root_inverse * fit.s2 * root_inverse);
  const EigenSystem eigen = sym_eigen(fit.r);
  fit.values = eigen.values;
  fit.vectors = eigen.vectors;
  fit.unmixing = eigen.vectors.transpose() * root_inverse;
  fit.slices = slices;
  fit.slice_count = slices.slice_count;
  return fit;
}

}  // namespace

SirFit sir_fit(const DataTable& x, const Eigen::Ref<const Eigen::VectorXd>& y, int slice_count) {
  if (x.n() <= x.p()) throw InvalidInput("sir_fit: need n > p");
  if (y.size() != x.n()) throw InvalidInput("sir_fit: response length does not match the data");
  return fit_with_slices(x, make_slices(y, slice_count));
}

double sir_Tk(const SirFit& fit, int k) {
  const int p = static_cast<int>(fit.values.size());
  check_k(p, k);
  // Roundoff dust below 1e-10 is clamped so rank-deficient tails are exact zeros.
  const Eigen::ArrayXd tail = fit.values.segment(k, p - k).array().max(0.0);
  const double value = (tail < 1e-10).select(0.0, tail).mean();
  return value;
}

SirTestResult sir_asymp_pvalue(const DataTable& x, const Eigen::Ref<const Eigen::VectorXd>& y,
                               int k, int slice_count) {
  const int p = static_cast<int>(x.p());
  check_k(p, k);
  if (slice_count < k + 2)
    throw InvalidSlices("sir: need H >= k + 2 for a nondegenerate test; increase H");
  const SirFit fit = sir_fit(x, y, slice_count);

  SirTestResult result;
  result.k = k;
  result.statistic = sir_Tk(fit, k);
  result.df = (p - k) * (slice_count - k - 1);
  result.mode = TestMode::asymptotic;
  result.slice_count = slice_count;
  result.n = static_cast<long>(x.n());
  result.p = p;
  result.p_value = chisq_sf(x.n() * (p - k) * result.statistic, result.df);
  return result;
}

std::pair<Eigen::VectorXd, DataTable> sir_resample(const DataTable& x,
                                                   const Eigen::Ref<const Eigen::VectorXd>& y,
                                                   int k, const SirFit& fit, RngStream& rng) {
  const Eigen::Index n = x.n();
  const Eigen::Index p = x.p();
  if (k < 0 || k > p) throw InvalidK("sir_resample: k outside [0, p]");
  if (y.size() != n) throw InvalidInput("sir_resample: response length mismatch");

  const Eigen::MatrixXd unmixed =
      (x.rows().rowwise() - fit.mean.transpose()) * fit.unmixing.transpose();
  Eigen::VectorXd response(n);
  Eigen::MatrixXd sampled(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    // (y, z1) from one original row, z2 from an independently drawn row.
    const Eigen::Index signal_pick = static_cast<Eigen::Index>(rng.uniform_index(n));
    const Eigen::Index noise_pick = static_cast<Eigen::Index>(rng.uniform_index(n));
    response(i) = y(signal_pick);
    sampled.row(i).head(k) = unmixed.row(signal_pick).head(k);
    sampled.row(i).tail(p - k) = unmixed.row(noise_pick).tail(p - k);
  }

  // x = W^{-1} z + mean with W^{-1} = S1^{1/2} U, i.e. X* = Z* U' S1^{1/2}.
  const Eigen::MatrixXd mixed = sampled * fit.vectors.transpose() * sym_power(fit.s1, 0.5);
  return {std::move(response),
          DataTable((mixed.rowwise() + fit.mean.transpose()).eval(), x.column_names())};
}

SirTestResult sir_boot_pvalue(const DataTable& x, const Eigen::Ref<const Eigen::VectorXd>& y,
                              int k, int slice_count, const BootstrapConfig& config,
                              const SirBootOptions& options) {
  const int p = static_cast<int>(x.p());
  check_k(p, k);
  if (slice_count < k + 2)
    throw InvalidSlices("sir: need H >= k + 2 for a nondegenerate test; increase H");
  const SirFit fit = sir_fit(x, y, slice_count);
  const double observed = sir_Tk(fit, k);

  const auto score = [&](RngStream& rng) {
    auto [response, replicate] = sir_resample(x, y, k, fit, rng);
    const SliceAssignment slices = options.freeze_slices
                                       ? apply_slice_boundaries(response, fit.slices.boundaries)
                                       : make_slices(response, slice_count);
    return sir_Tk(fit_with_slices(replicate, slices), k);
  };
  const BootstrapPvalue boot = bootstrap_pvalue(observed, score, config);

  SirTestResult result;
  result.k = k;
  result.statistic = observed;
  result.df = (p - k) * (slice_count - k - 1);
  result.p_value = boot.p_hat;
  result.mode = TestMode::boot_I;
  result.replicates = config.replicates;
  result.slice_count = slice_count;
  result.n = static_cast<long>(x.n());
  result.p = p;
  return result;
}

}  // namespace subdim

#include "subdim/pca.hpp"

#include <cmath>

#include "subdim/dist.hpp"
#include "subdim/errors.hpp"

namespace subdim {

namespace {

void check_k(const PcaFit& fit, int k, int slack = 0) {
  const int p = static_cast<int>(fit.eigen.values.size());
  if (k < 0 || k > p - 1 + slack)
    throw InvalidK("pca: k = " + std::to_string(k) + " outside [0, " +
                   std::to_string(p - 1 + slack) + "]");
}

Eigen::VectorXd tail_values(const PcaFit& fit, int k) {
  const Eigen::Index p = fit.eigen.values.size();
  return fit.eigen.values.segment(k, p - k);
}

int pca_df(int p, int k) { return (p - k - 1) * (p - k + 2) / 2; }

ScatterEstimate replicate_scatter(const DataTable& x, PcaScatter kind, const PcaFit& original,
                                  bool full_tyler) {
  switch (kind) {
    case PcaScatter::cov:
      return mean_cov(x);
    case PcaScatter::tyler:
    case PcaScatter::tyler3: {
      // Fast robust bootstrap: a 3-step fixed point started from the
      // original-sample shape, unless the full iteration was requested.
      TylerOptions options;
      options.full = full_tyler;
      options.k_steps = 3;
      options.init = original.scatter.matrix;
      return tyler_shape(x, spatial_median(x), options);
    }
  }
  throw InvalidInput("pca: unknown scatter kind");
}

double replicate_statistic(const PcaFit& fit, int k, PcaStatistic statistic) {
  return statistic == PcaStatistic::T ? pca_Tk(fit, k) : pca_Lk(fit, k);
}

}  // namespace

PcaFit pca_fit(const DataTable& x, PcaScatter kind) {
  if (x.n() <= x.p()) throw InvalidInput("pca_fit: need n > p");
  PcaFit fit;
  switch (kind) {
    case PcaScatter::cov:
      fit.scatter = mean_cov(x);
      break;
    case PcaScatter::tyler: {
      fit.scatter = tyler_shape(x, spatial_median(x));
      break;
    }
    case PcaScatter::tyler3: {
      TylerOptions options;
      options.full = false;
      options.k_steps = 3;
      options.init = mean_cov(x).matrix;  // trace-rescaled inside tyler_shape
      fit.scatter = tyler_shape(x, spatial_median(x), options);
      break;
    }
  }
  fit.eigen = sym_eigen(fit.scatter.matrix);
  return fit;
}

double pca_Tk(const PcaFit& fit, int k) {
  check_k(fit, k);
  const double s2 = vector_moments(tail_values(fit, k)).s2;
  return s2 > 0.0 ? s2 : 0.0;
}

double pca_Vk(const PcaFit& fit, int k) {
  check_k(fit, k);
  const Eigen::Index p = fit.eigen.values.size();
  const Eigen::Index width = p - k;
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index start = 0; start + width <= p; ++start) {
    const double s2 = vector_moments(fit.eigen.values.segment(start, width)).s2;
    best = std::min(best, s2);
  }
  return best > 0.0 ? best : 0.0;
}

double pca_Lk(const PcaFit& fit, int k) {
  check_k(fit, k);
  const Eigen::VectorXd tail = tail_values(fit, k);
  if ((tail.array() <= 0.0).any())
    throw InvalidSpectrum("pca_Lk: nonpositive eigenvalue in the tail");
  const double arithmetic = tail.mean();
  const double log_geometric = tail.array().log().mean();
  const double value = std::log(arithmetic) - log_geometric;
  return value > 0.0 ? value : 0.0;  // AM >= GM; clamp roundoff dust
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> pca_projections(const PcaFit& fit, int k) {
  const int p = static_cast<int>(fit.eigen.values.size());
  check_k(fit, k, /*slack=*/1);  // k = p is the empty noise space
  const Eigen::MatrixXd noise_vectors = fit.eigen.vectors.rightCols(p - k);
  const Eigen::MatrixXd noise_projection = noise_vectors * noise_vectors.transpose();
  return {symmetrized(noise_projection),
          symmetrized(Eigen::MatrixXd::Identity(p, p) - noise_projection)};
}

PcaTestResult pca_asymp_pvalue(const DataTable& x, int k, PcaScatter kind,
                               PcaStatistic statistic) {
  const PcaFit fit = pca_fit(x, kind);
  check_k(fit, k);
  const int p = static_cast<int>(x.p());
  const long n = static_cast<long>(x.n());

  PcaTestResult result;
  result.k = k;
  result.statistic_kind = statistic;
  result.mode = TestMode::asymptotic;
  result.scatter_kind = kind;
  result.n = n;
  result.p = p;
  result.d_hat = tail_values(fit, k).mean();
  result.sigma1 = sigma1_hat(x, fit.scatter);
  result.df = pca_df(p, k);
  result.statistic = replicate_statistic(fit, k, statistic);

  if (k == p - 1) {  // single tail eigenvalue: statistic is identically zero
    result.p_value = 1.0;
    return result;
  }
  const double scaled =
      statistic == PcaStatistic::T
          ? n * (p - k) * result.statistic / (2.0 * result.d_hat * result.d_hat * result.sigma1)
          : n * (p - k) * result.statistic / result.sigma1;
  result.p_value = chisq_sf(scaled, result.df);
  return result;
}

DataTable pca_resample_I(const DataTable& x, int k, const PcaFit& fit, RngStream& rng) {
  const Eigen::Index n = x.n();
  const Eigen::Index p = x.p();
  if (k < 0 || k > p) throw InvalidK("pca_resample_I: k outside [0, p]");
  const Eigen::VectorXd& values = fit.eigen.values;
  if (!(values(p - 1) > 0.0))
    throw SingularMatrix("pca_resample_I: scatter spectrum is not positive");

  const Eigen::MatrixXd whitened = (x.rows().rowwise() - fit.scatter.location.transpose()) *
                                   fit.eigen.vectors *
                                   values.array().pow(-0.5).matrix().asDiagonal();

  Eigen::MatrixXd rotated(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index pick = static_cast<Eigen::Index>(rng.uniform_index(n));
    rotated.row(i) = (haar_orthogonal(p, rng) * whitened.row(pick).transpose()).transpose();
  }

  // Tail of the spectrum replaced by its average: H_0k holds exactly.
  Eigen::VectorXd null_values = values;
  if (k < p) null_values.tail(p - k).setConstant(values.tail(p - k).mean());
  const Eigen::MatrixXd colored = rotated * null_values.array().sqrt().matrix().asDiagonal() *
                                  fit.eigen.vectors.transpose();
  return DataTable((colored.rowwise() + fit.scatter.location.transpose()).eval(),
                   x.column_names());
}

DataTable pca_resample_II(const DataTable& x, int k, const PcaFit& fit, RngStream& rng) {
  const Eigen::Index n = x.n();
  const Eigen::Index p = x.p();
  if (k < 0 || k > p) throw InvalidK("pca_resample_II: k outside [0, p]");

  const Eigen::MatrixXd noise_vectors = fit.eigen.vectors.rightCols(p - k);
  Eigen::MatrixXd resampled(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index pick = static_cast<Eigen::Index>(rng.uniform_index(n));
    Eigen::VectorXd centered = x.rows().row(pick).transpose() - fit.scatter.location;
    if (k < p) {
      const Eigen::VectorXd noise_coords = noise_vectors.transpose() * centered;
      centered += noise_vectors * (haar_orthogonal(p - k, rng) * noise_coords - noise_coords);
    }
    resampled.row(i) = (centered + fit.scatter.location).transpose();
  }
  return DataTable(std::move(resampled), x.column_names());
}

PcaTestResult pca_boot_pvalue(const DataTable& x, int k, PcaScatter kind, TestMode mode,
                              const BootstrapConfig& config, const PcaBootOptions& options) {
  if (mode == TestMode::asymptotic)
    return pca_asymp_pvalue(x, k, kind, options.statistic);
  const PcaFit fit = pca_fit(x, kind);
  check_k(fit, k);
  const double observed = replicate_statistic(fit, k, options.statistic);

  const auto score = [&](RngStream& rng) {
    const DataTable replicate = mode == TestMode::boot_I ? pca_resample_I(x, k, fit, rng)
                                                         : pca_resample_II(x, k, fit, rng);
    PcaFit refit;
    refit.scatter = replicate_scatter(replicate, kind, fit, options.full_tyler_in_replicates);
    refit.eigen = sym_eigen(refit.scatter.matrix);
    return replicate_statistic(refit, k, options.statistic);
  };
  const BootstrapPvalue boot = bootstrap_pvalue(observed, score, config);

  PcaTestResult result;
  result.k = k;
  result.statistic = observed;
  result.statistic_kind = options.statistic;
  result.d_hat = tail_values(fit, k).mean();
  result.sigma1 = sigma1_hat(x, fit.scatter);
  result.df = pca_df(static_cast<int>(x.p()), k);
  result.p_value = boot.p_hat;
  result.mode = mode;
  result.replicates = config.replicates;
  result.scatter_kind = kind;
  result.n = static_cast<long>(x.n());
  result.p = static_cast<int>(x.p());
  return result;
}

}  // namespace subdim

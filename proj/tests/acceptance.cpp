// Acceptance suite: runs every acceptance criterion at its pinned tolerance
// and prints one PASS/FAIL/SKIP line per criterion (with indented detail for
// multi-part criteria). Real-data criteria are conditional on fixture files;
// see tests/fixtures/README.md for the expected layout.
//
// Usage: acceptance [--fixtures <dir>] [--seed <u64>]

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "subdim/bootstrap.hpp"
#include "subdim/dist.hpp"
#include "subdim/errors.hpp"
#include "subdim/fobi.hpp"
#include "subdim/io.hpp"
#include "subdim/linalg.hpp"
#include "subdim/pca.hpp"
#include "subdim/scatter.hpp"
#include "subdim/simulate.hpp"
#include "subdim/sir.hpp"

using namespace subdim;

namespace {

struct Part {
  bool pass;
  std::string detail;
};

struct Outcome {
  std::string name;
  std::string title;
  std::vector<Part> parts;
  bool skipped = false;
  std::string skip_reason;
  double seconds = 0.0;

  bool passed() const {
    if (skipped) return true;
    for (const auto& part : parts)
      if (!part.pass) return false;
    return true;
  }
};

std::string format(double value, int digits = 4) {
  std::ostringstream out;
  out.precision(digits);
  out << std::fixed << value;
  return out.str();
}

Part in_band(const std::string& label, double value, double lo, double hi,
             const std::string& reference) {
  const bool ok = value >= lo && value <= hi;
  return {ok, label + " = " + format(value) + " in [" + format(lo, 3) + ", " + format(hi, 3) +
                  "] (" + reference + ")"};
}

Part at_least(const std::string& label, double value, double bound, const std::string& reference) {
  return {value >= bound,
          label + " = " + format(value) + " >= " + format(bound, 3) + " (" + reference + ")"};
}

Part greater_than(const std::string& label, double value, double bound,
                  const std::string& reference) {
  return {value > bound,
          label + " = " + format(value) + " > " + format(bound, 3) + " (" + reference + ")"};
}

double sim_rate(SimModel model, int p, int n, int reps, const std::string& method, int k,
                std::uint64_t seed, int boot_m = 200, int slices = 10) {
  SimulationSpec spec;
  spec.model = model;
  spec.p = p;
  spec.n = n;
  spec.reps = reps;
  spec.bootstrap_replicates = boot_m;
  spec.master_seed = seed;
  spec.slice_count = slices;
  spec.methods = {parse_method(sim_family(model), method)};
  spec.ks = {k};
  const RejectionReport report = rejection_rate(spec);
  return report.cells.at(0).rate;
}

// ---------------------------------------------------------------------------

Outcome criterion_1(std::uint64_t seed) {
  Outcome out{"criterion-1", "PCA asymptotic null calibration (M1, p=6, n=1000, N=500)", {}};
  const auto start = std::chrono::steady_clock::now();
  const double rate = sim_rate(SimModel::pca_m1, 6, 1000, 500, "asymp", 3, seed);
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.parts.push_back(in_band("rejection rate of true H03", rate, 0.025, 0.075, "reference 0.0510"));
  out.parts.push_back({out.seconds < 120.0, "runtime " + format(out.seconds, 1) + "s < 120s"});
  return out;
}

Outcome criterion_2(std::uint64_t seed) {
  Outcome out{"criterion-2", "PCA bootstrap calibration (M1, PCA-II, M=200)", {}};
  const auto start = std::chrono::steady_clock::now();
  const double rate = sim_rate(SimModel::pca_m1, 6, 1000, 500, "boot2", 3, seed);
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.parts.push_back(in_band("rejection rate of true H03", rate, 0.025, 0.075, "reference 0.0495"));
  out.parts.push_back({out.seconds < 1800.0, "runtime " + format(out.seconds, 1) + "s < 1800s"});
  return out;
}

Outcome criterion_3(std::uint64_t seed) {
  Outcome out{"criterion-3", "PCA power (M1, p=6, n=500, false H02)", {}};
  const double rate = sim_rate(SimModel::pca_m1, 6, 500, 500, "asymp", 2, seed);
  out.parts.push_back(at_least("rejection rate of false H02", rate, 0.95, "reference 1.0000"));
  return out;
}

Outcome criterion_4(std::uint64_t seed) {
  Outcome out{"criterion-4", "robustness contrast (M3 t5, p=15, n=1000, true H03)", {}};
  const double tyler = sim_rate(SimModel::pca_m3, 15, 1000, 500, "tyler3-asymp", 3, seed);
  const double cov = sim_rate(SimModel::pca_m3, 15, 1000, 500, "cov-asymp", 3, seed);
  out.parts.push_back(in_band("Tyler 3-step asymptotic rate", tyler, 0.02, 0.08, "reference 0.0470"));
  out.parts.push_back(greater_than("covariance asymptotic rate", cov, 0.10, "reference 0.1630"));
  return out;
}

Outcome criterion_5(std::uint64_t seed) {
  Outcome out{"criterion-5", "FOBI calibration (ICA M1, p=6, n=1000, true H03)", {}};
  const double asy1 = sim_rate(SimModel::ica_m1, 6, 1000, 500, "asy1", 3, seed);
  const double boot1 = sim_rate(SimModel::ica_m1, 6, 1000, 500, "boot1", 3, seed);
  out.parts.push_back(in_band("Asy1 rate", asy1, 0.02, 0.07, "reference 0.044"));
  out.parts.push_back(in_band("Boot1 rate (M=200)", boot1, 0.03, 0.10, "reference 0.062"));
  return out;
}

Outcome criterion_6(std::uint64_t seed) {
  Outcome out{"criterion-6", "SIR calibration (M1, p=6, n=1000, H=10, true H02)", {}};
  const double asymp = sim_rate(SimModel::sir_m1, 6, 1000, 500, "asymp", 2, seed);
  const double boot = sim_rate(SimModel::sir_m1, 6, 1000, 500, "boot", 2, seed);
  out.parts.push_back(in_band("asymptotic rate", asymp, 0.025, 0.075, "reference 0.050"));
  out.parts.push_back(in_band("bootstrap rate (M=200)", boot, 0.03, 0.09, "reference 0.057"));
  return out;
}

// ---------------------------------------------------------------------------
// criterion 7: real-data fixtures (conditional on availability)

Part match_2dp(const std::string& label, double value, double expected) {
  // values published at two decimal places
  const bool ok = std::abs(value - expected) <= 0.005 + 1e-12;
  return {ok, label + " = " + format(value, 2) + " expected " + format(expected, 2)};
}

Part match_pm(const std::string& label, double value, double expected, double tolerance) {
  const bool ok = std::abs(value - expected) <= tolerance;
  return {ok, label + " = " + format(value, 3) + " expected " + format(expected, 3) + " +/- " +
                  format(tolerance, 3)};
}

void laseri_checks(const std::string& path, Outcome& out) {
  const auto [x, unused] = load_table(path);
  if (x.p() != 4) {
    out.parts.push_back({false, "laseri fixture must have 4 SVRI columns"});
    return;
  }
  const std::vector<double> cov_expected{982935.95, 176465.68, 36213.91, 25865.65};
  const PcaFit cov_fit = pca_fit(x, PcaScatter::cov);
  for (int i = 0; i < 4; ++i) {
    const double expected = cov_expected[static_cast<std::size_t>(i)];
    const bool ok = std::abs(cov_fit.eigen.values(i) - expected) <= 0.005 + 1e-9 * cov_expected[0];
    out.parts.push_back({ok, "cov eigenvalue " + std::to_string(i + 1) + " = " +
                                 format(cov_fit.eigen.values(i), 2) + " expected " +
                                 format(expected, 2)});
  }

  // published Tyler eigenvalues are on the determinant-one scale
  const PcaFit tyler_fit = pca_fit(x, PcaScatter::tyler);
  const double log_geo = tyler_fit.eigen.values.array().log().mean();
  const Eigen::VectorXd det1 = tyler_fit.eigen.values / std::exp(log_geo);
  const std::vector<double> tyler_expected{8.94, 1.78, 0.30, 0.21};
  for (int i = 0; i < 4; ++i)
    out.parts.push_back(match_2dp("tyler eigenvalue " + std::to_string(i + 1), det1(i),
                                  tyler_expected[static_cast<std::size_t>(i)]));

  out.parts.push_back(match_pm("cov asymptotic p-value for H02",
                               pca_asymp_pvalue(x, 2, PcaScatter::cov).p_value, 0.104, 0.005));
  out.parts.push_back(match_pm("tyler asymptotic p-value for H02",
                               pca_asymp_pvalue(x, 2, PcaScatter::tyler).p_value, 0.064, 0.005));

  // the k = 2 noise/signal projections each have rank two
  const auto [noise, signal] = pca_projections(cov_fit, 2);
  const double noise_rank = noise.trace();
  const double signal_rank = signal.trace();
  out.parts.push_back({std::abs(noise_rank - 2.0) < 1e-8 && std::abs(signal_rank - 2.0) < 1e-8,
                       "projection ranks at k=2: " + format(noise_rank, 2) + " and " +
                           format(signal_rank, 2)});
}

void ais_checks(const std::string& path, Outcome& out) {
  const auto [x, y] = load_table(path, std::string("lbm"));
  if (!y || x.p() != 8) {
    out.parts.push_back({false, "ais fixture must have 8 log-predictors plus an 'lbm' column"});
    return;
  }
  const std::vector<double> expected{0.95, 0.21, 0.11, 0.07, 0.04, 0.02, 0.01, 0.00};
  const SirFit fit = sir_fit(x, *y, 10);
  for (int i = 0; i < 8; ++i)
    out.parts.push_back(match_2dp("sir eigenvalue " + std::to_string(i + 1), fit.values(i),
                                  expected[static_cast<std::size_t>(i)]));
  const std::vector<double> p_values{0.000, 0.001, 0.121, 0.458};
  for (int k = 0; k < 4; ++k)
    out.parts.push_back(match_pm("asymptotic p-value for H0" + std::to_string(k),
                                 sir_asymp_pvalue(x, *y, k, 10).p_value,
                                 p_values[static_cast<std::size_t>(k)], 0.01));
}

void images_checks(const std::string& path, Outcome& out) {
  const auto [x, unused] = load_table(path);
  if (x.p() != 6) {
    out.parts.push_back({false, "image fixture must have 6 mixed channels"});
    return;
  }
  const std::vector<double> expected{9.00, 8.27, 7.92, 8.04, 7.97, 8.00};
  const FobiFit fit = fobi_fit(x);
  for (int i = 0; i < 6; ++i)
    out.parts.push_back(match_2dp("fobi eigenvalue " + std::to_string(i + 1), fit.values(i),
                                  expected[static_cast<std::size_t>(i)]));
  const std::vector<double> p_values{0.000, 0.211, 0.878, 0.810};
  for (int k = 1; k <= 4; ++k)
    out.parts.push_back(match_pm("ica asymptotic p-value for H0" + std::to_string(k),
                                 fobi_asymp_pvalue(x, k, FobiVariant::ica).p_value,
                                 p_values[static_cast<std::size_t>(k - 1)], 0.01));
}

Outcome criterion_7(const std::string& fixtures_dir) {
  Outcome out{"criterion-7", "real-data fixture reproduction (conditional)", {}};
  struct Fixture {
    const char* file;
    void (*checks)(const std::string&, Outcome&);
  };
  const std::vector<Fixture> fixtures{{"laseri_svri.csv", &laseri_checks},
                                      {"ais.csv", &ais_checks},
                                      {"images_mix.csv", &images_checks}};
  std::vector<std::string> missing;
  for (const auto& fixture : fixtures) {
    const std::filesystem::path path = std::filesystem::path(fixtures_dir) / fixture.file;
    if (std::filesystem::exists(path))
      fixture.checks(path.string(), out);
    else
      missing.push_back(fixture.file);
  }
  if (out.parts.empty()) {
    out.skipped = true;
    out.skip_reason = "no fixture files under " + fixtures_dir +
                      " (conditional criterion; see tests/fixtures/README.md)";
  } else if (!missing.empty()) {
    std::string note = "missing (skipped):";
    for (const auto& file : missing) note += " " + file;
    out.parts.push_back({true, note});
  }
  return out;
}

// ---------------------------------------------------------------------------
// criterion 8: property battery (always runnable)

Outcome criterion_8(std::uint64_t seed) {
  Outcome out{"criterion-8", "property battery", {}};
  RngStream rng(seed, 8000);

  // shared random data sets
  Eigen::MatrixXd raw = rng.normal_matrix(200, 5);
  raw.col(0) *= 2.0;
  raw.col(1) *= 1.5;
  const DataTable x{Eigen::MatrixXd(raw)};
  Eigen::VectorXd y(200);
  for (int i = 0; i < 200; ++i)
    y(i) = raw(i, 0) * (raw(i, 0) + raw(i, 1) + 1.0) + 0.5 * rng.normal();

  const Eigen::MatrixXd rotation = haar_orthogonal(5, rng);
  const Eigen::VectorXd shift = rng.normal_vector(5);
  const double scale = 1.9;
  const DataTable mapped{((scale * raw * rotation.transpose()).rowwise() + shift.transpose()).eval()};
  Eigen::MatrixXd mix;
  for (;;) {
    mix = rng.normal_matrix(5, 5);
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(mix);
    if (svd.singularValues()(4) > 1e-3 * svd.singularValues()(0)) break;
  }
  const DataTable affine{((raw * mix.transpose()).rowwise() + shift.transpose()).eval()};

  {  // studentized PCA statistic invariance, cov and Tyler (1e-8)
    double worst = 0.0;
    for (PcaScatter kind : {PcaScatter::cov, PcaScatter::tyler}) {
      for (int k : {0, 1, 2}) {
        const auto scaled = [&](const DataTable& table) {
          const PcaTestResult r = pca_asymp_pvalue(table, k, kind);
          return static_cast<double>(r.n) * (r.p - r.k) * r.statistic /
                 (2.0 * r.d_hat * r.d_hat * r.sigma1);
        };
        const double a = scaled(x);
        const double b = scaled(mapped);
        worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
      }
    }
    out.parts.push_back({worst < 1e-8, "studentized PCA statistic invariance, max rel dev " +
                                           format(worst, 12)});
  }

  {  // FOBI / SIR eigenvalue affine invariance (1e-7)
    const Eigen::VectorXd f1 = fobi_fit(x).values;
    const Eigen::VectorXd f2 = fobi_fit(affine).values;
    const double fobi_dev = (f1 - f2).cwiseAbs().maxCoeff();
    out.parts.push_back({fobi_dev < 1e-7, "FOBI eigenvalue affine invariance, max dev " +
                                              format(fobi_dev, 12)});
    const Eigen::VectorXd s1 = sir_fit(x, y, 8).values;
    const Eigen::VectorXd s2 = sir_fit(affine, y, 8).values;
    const double sir_dev = (s1 - s2).cwiseAbs().maxCoeff();
    out.parts.push_back({sir_dev < 1e-7, "SIR eigenvalue affine invariance, max dev " +
                                             format(sir_dev, 12)});
  }

  {  // Pillai identity (1e-8) via an independent group-mean computation
    const SirFit fit = sir_fit(x, y, 8);
    const double via_eigen = 200.0 * 5.0 * fit.values.mean();
    const SliceAssignment slices = fit.slices;
    const Eigen::VectorXd grand = x.rows().colwise().mean();
    Eigen::MatrixXd total = Eigen::MatrixXd::Zero(5, 5);
    for (int i = 0; i < 200; ++i) {
      const Eigen::VectorXd d = x.rows().row(i).transpose() - grand;
      total += d * d.transpose();
    }
    Eigen::MatrixXd between = Eigen::MatrixXd::Zero(5, 5);
    for (int h = 0; h < slices.slice_count; ++h) {
      Eigen::VectorXd sum = Eigen::VectorXd::Zero(5);
      int count = 0;
      for (int i = 0; i < 200; ++i)
        if (slices.labels[static_cast<std::size_t>(i)] == h) {
          sum += x.rows().row(i).transpose();
          ++count;
        }
      if (count == 0) continue;
      const Eigen::VectorXd d = sum / count - grand;
      between += count * d * d.transpose();
    }
    const double pillai = 200.0 * total.ldlt().solve(between).trace();
    const double dev = std::abs(via_eigen - pillai) / std::max(1.0, std::abs(pillai));
    out.parts.push_back({dev < 1e-8, "Pillai identity, rel dev " + format(dev, 12)});
  }

  {  // projection identities, T_{p-1} = 0, AM-GM, V <= T, tail inequality
    const PcaFit fit = pca_fit(x, PcaScatter::cov);
    double worst = 0.0;
    for (int k = 0; k <= 5; ++k) {
      const auto [noise, signal] = pca_projections(fit, k);
      worst = std::max(worst, (noise * fit.scatter.matrix * signal).cwiseAbs().maxCoeff() /
                                  fit.eigen.values(0));
    }
    out.parts.push_back({worst < 1e-8, "projection identity P S Q = 0, max rel dev " +
                                           format(worst, 12)});
    out.parts.push_back({pca_Tk(fit, 4) == 0.0, "T_{p-1} = 0 exactly"});

    bool amgm = true, v_le_t = true, tail_bound = true;
    for (int trial = 0; trial < 200; ++trial) {
      const int p = 3 + static_cast<int>(rng.uniform_index(6));
      std::vector<double> values(static_cast<std::size_t>(p));
      for (auto& v : values) v = 0.2 + 4.0 * rng.uniform();
      std::sort(values.begin(), values.end(), std::greater<>());
      PcaFit synthetic;
      synthetic.eigen.values = Eigen::Map<const Eigen::VectorXd>(values.data(), p);
      synthetic.eigen.vectors = Eigen::MatrixXd::Identity(p, p);
      for (int k = 0; k < p; ++k) {
        if (k < p - 1 && pca_Lk(synthetic, k) < 0.0) amgm = false;
        if (pca_Vk(synthetic, k) > pca_Tk(synthetic, k) + 1e-14) v_le_t = false;
      }
      for (int q = 0; q < p; ++q)
        for (int k = q; k < p; ++k) {
          const double bound =
              std::pow(static_cast<double>(p - q) / (p - k), 2) * pca_Tk(synthetic, q);
          if (pca_Tk(synthetic, k) > bound + 1e-12) tail_bound = false;
        }
    }
    out.parts.push_back({amgm, "L_k >= 0 (AM-GM) on random spectra"});
    out.parts.push_back({v_le_t, "V_k <= T_k on random spectra"});
    out.parts.push_back({tail_bound, "T_k <= ((p-q)/(p-k))^2 T_q for k >= q on random spectra"});
  }

  {  // bootstrap p-value lattice membership
    BootstrapConfig config;
    config.replicates = 37;
    config.master_seed = seed + 1;
    const auto score = [](RngStream& r) { return r.uniform(); };
    bool lattice = true;
    for (double t : {0.1, 0.5, 0.9}) {
      const BootstrapPvalue result = bootstrap_pvalue(t, score, config);
      const double scaled = result.p_hat * 38.0;
      lattice = lattice && std::abs(scaled - std::round(scaled)) < 1e-9 &&
                result.p_hat >= 1.0 / 38.0 && result.p_hat <= 1.0;
    }
    out.parts.push_back({lattice, "bootstrap p-values live on {1,...,M+1}/(M+1)"});
  }

  {  // mixture tail probability vs Monte Carlo oracle (3 SE at 1e7 draws)
    const double a = 2.0, b = 3.0, xq = 20.0;
    const int df_a = 5;
    const long draws = 10000000;
    RngStream mc(seed, 8123);
    long exceed = 0;
    for (long i = 0; i < draws; ++i) {
      const double z = mc.normal();
      if (a * mc.chi_square(df_a) + b * z * z >= xq) ++exceed;
    }
    const double estimate = static_cast<double>(exceed) / draws;
    const double se = std::sqrt(estimate * (1.0 - estimate) / draws);
    const double value = weighted_chisq_mix_sf(xq, a, df_a, b);
    out.parts.push_back({std::abs(value - estimate) < 3.0 * se,
                         "mixture sf " + format(value, 6) + " within 3 SE of Monte Carlo " +
                             format(estimate, 6)});
  }

  {  // Tyler fixed-point residual
    const Eigen::VectorXd location = spatial_median(x);
    const ScatterEstimate tyler = tyler_shape(x, location);
    const Eigen::MatrixXd centered = x.rows().rowwise() - location.transpose();
    const Eigen::MatrixXd inverse = tyler.matrix.inverse();
    Eigen::MatrixXd updated = Eigen::MatrixXd::Zero(5, 5);
    for (int i = 0; i < 200; ++i) {
      const Eigen::VectorXd v = centered.row(i).transpose();
      updated += v * v.transpose() / v.dot(inverse * v);
    }
    updated *= 5.0 / 200.0;
    updated *= 5.0 / updated.trace();
    const double residual = (updated - tyler.matrix).norm();
    out.parts.push_back({residual <= 1e-6, "Tyler fixed-point residual " + format(residual, 10)});
  }

  {  // seed determinism of every resampler
    const PcaFit fit = pca_fit(x, PcaScatter::cov);
    const FobiFit ffit = fobi_fit(x);
    const SirFit sfit = sir_fit(x, y, 8);
    bool deterministic = true;
    const auto same = [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
      return (a - b).cwiseAbs().maxCoeff() == 0.0;
    };
    {
      RngStream r1(seed, 1), r2(seed, 1);
      deterministic = deterministic &&
                      same(pca_resample_I(x, 2, fit, r1).rows(), pca_resample_I(x, 2, fit, r2).rows());
    }
    {
      RngStream r1(seed, 2), r2(seed, 2);
      deterministic = deterministic &&
                      same(pca_resample_II(x, 2, fit, r1).rows(), pca_resample_II(x, 2, fit, r2).rows());
    }
    {
      RngStream r1(seed, 3), r2(seed, 3);
      deterministic = deterministic &&
                      same(fobi_resample_I(x, 2, ffit, r1).rows(), fobi_resample_I(x, 2, ffit, r2).rows());
    }
    {
      RngStream r1(seed, 4), r2(seed, 4);
      deterministic = deterministic &&
                      same(fobi_resample_II(x, 2, ffit, r1).rows(), fobi_resample_II(x, 2, ffit, r2).rows());
    }
    {
      RngStream r1(seed, 5), r2(seed, 5);
      auto [ya, xa] = sir_resample(x, y, 2, sfit, r1);
      auto [yb, xb] = sir_resample(x, y, 2, sfit, r2);
      deterministic = deterministic && same(xa.rows(), xb.rows()) &&
                      (ya - yb).cwiseAbs().maxCoeff() == 0.0;
    }
    out.parts.push_back({deterministic, "all five resamplers are seed-deterministic"});
  }

  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::string fixtures_dir = "tests/fixtures";
  std::uint64_t seed = 20260810;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--fixtures" && i + 1 < argc)
      fixtures_dir = argv[++i];
    else if (arg == "--seed" && i + 1 < argc)
      seed = std::stoull(argv[++i]);
    else {
      std::cerr << "usage: acceptance [--fixtures <dir>] [--seed <u64>]\n";
      return 2;
    }
  }

  std::vector<Outcome> outcomes;
  outcomes.push_back(criterion_1(seed));
  outcomes.push_back(criterion_2(seed));
  outcomes.push_back(criterion_3(seed));
  outcomes.push_back(criterion_4(seed));
  outcomes.push_back(criterion_5(seed));
  outcomes.push_back(criterion_6(seed));
  outcomes.push_back(criterion_7(fixtures_dir));
  outcomes.push_back(criterion_8(seed));

  bool all_pass = true;
  for (const auto& outcome : outcomes) {
    const char* verdict = outcome.skipped ? "SKIP" : (outcome.passed() ? "PASS" : "FAIL");
    std::cout << outcome.name << " " << verdict << "  " << outcome.title;
    if (outcome.seconds > 0.0) std::cout << "  [" << format(outcome.seconds, 1) << "s]";
    std::cout << "\n";
    if (outcome.skipped) {
      std::cout << "    " << outcome.skip_reason << "\n";
      continue;
    }
    for (const auto& part : outcome.parts)
      std::cout << "    " << (part.pass ? "ok   " : "FAIL ") << part.detail << "\n";
    all_pass = all_pass && outcome.passed();
  }
  std::cout << (all_pass ? "acceptance: all criteria passed\n"
                         : "acceptance: at least one criterion failed\n");
  return all_pass ? 0 : 1;
}

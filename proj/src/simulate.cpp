#include "subdim/simulate.hpp"

#include <cmath>

#include "subdim/errors.hpp"
#include "subdim/parallel.hpp"

namespace subdim {

namespace marginals {

double std_exponential(RngStream& rng) { return rng.exponential() - 1.0; }
double std_chisq1(RngStream& rng) { return (rng.chi_square(1) - 1.0) / std::sqrt(2.0); }
double std_chisq2(RngStream& rng) { return (rng.chi_square(2) - 2.0) / 2.0; }
double std_t5(RngStream& rng) { return rng.student_t(5) * std::sqrt(3.0 / 5.0); }
double std_uniform(RngStream& rng) { return (rng.uniform() - 0.5) * std::sqrt(12.0); }

}  // namespace marginals

namespace {

using namespace marginals;

// Stream-path tags keeping data, mixing and bootstrap draws disjoint.
constexpr std::uint64_t kDataPath = 1;
constexpr std::uint64_t kMixPath = 2;
constexpr std::uint64_t kBootPathBase = 16;

Eigen::MatrixXd random_mixing(int p, RngStream& rng) {
  for (int attempt = 0; attempt < 32; ++attempt) {
    const Eigen::MatrixXd candidate = rng.normal_matrix(p, p);
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(candidate);
    if (svd.singularValues()(p - 1) > 1e-6 * svd.singularValues()(0)) return candidate;
  }
  throw SingularMatrix("random_mixing: could not draw a well-conditioned matrix");
}

// Loadings of the factor models M1/M2: a_11 = sqrt(2), a_22 = a_33 = 1.
Eigen::MatrixXd factor_loadings(int p) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(p, 3);
  a(0, 0) = std::sqrt(2.0);
  a(1, 1) = 1.0;
  a(2, 2) = 1.0;
  return a;
}

Eigen::VectorXd target_spectrum(int p) {
  Eigen::VectorXd d = Eigen::VectorXd::Ones(p);
  d(0) = 3.0;
  d(1) = 2.0;
  d(2) = 2.0;
  return d;
}

}  // namespace

SimModel sim_model_from_string(const std::string& name) {
  if (name == "pca-m1") return SimModel::pca_m1;
  if (name == "pca-m2") return SimModel::pca_m2;
  if (name == "pca-m3") return SimModel::pca_m3;
  if (name == "ica-m1") return SimModel::ica_m1;
  if (name == "ica-m2") return SimModel::ica_m2;
  if (name == "sir-m1") return SimModel::sir_m1;
  if (name == "sir-m2") return SimModel::sir_m2;
  throw InvalidInput("unknown simulation model '" + name + "'");
}

std::string to_string(SimModel model) {
  switch (model) {
    case SimModel::pca_m1: return "pca-m1";
    case SimModel::pca_m2: return "pca-m2";
    case SimModel::pca_m3: return "pca-m3";
    case SimModel::ica_m1: return "ica-m1";
    case SimModel::ica_m2: return "ica-m2";
    case SimModel::sir_m1: return "sir-m1";
    case SimModel::sir_m2: return "sir-m2";
  }
  throw InvalidInput("unknown simulation model");
}

SimFamily sim_family(SimModel model) {
  switch (model) {
    case SimModel::pca_m1:
    case SimModel::pca_m2:
    case SimModel::pca_m3: return SimFamily::pca;
    case SimModel::ica_m1:
    case SimModel::ica_m2: return SimFamily::fobi;
    case SimModel::sir_m1:
    case SimModel::sir_m2: return SimFamily::sir;
  }
  throw InvalidInput("unknown simulation model");
}

int sim_signal_dimension(SimModel model) {
  return sim_family(model) == SimFamily::sir ? 2 : 3;
}

MethodSpec parse_method(SimFamily family, const std::string& token) {
  MethodSpec spec;
  spec.token = token;
  switch (family) {
    case SimFamily::pca: {
      std::string rest = token;
      spec.scatter = PcaScatter::cov;
      if (rest.rfind("cov-", 0) == 0) {
        rest = rest.substr(4);
      } else if (rest.rfind("tyler3-", 0) == 0) {
        spec.scatter = PcaScatter::tyler3;
        rest = rest.substr(7);
      } else if (rest.rfind("tyler-", 0) == 0) {
        spec.scatter = PcaScatter::tyler;
        rest = rest.substr(6);
      }
      if (rest == "asymp") spec.mode = TestMode::asymptotic;
      else if (rest == "boot1") spec.mode = TestMode::boot_I;
      else if (rest == "boot2") spec.mode = TestMode::boot_II;
      else throw InvalidInput("unknown pca method '" + token + "'");
      return spec;
    }
    case SimFamily::fobi: {
      if (token == "asy1") { spec.mode = TestMode::asymptotic; spec.variant = FobiVariant::ica; }
      else if (token == "asy2") { spec.mode = TestMode::asymptotic; spec.variant = FobiVariant::ngca; }
      else if (token == "boot1") { spec.mode = TestMode::boot_I; spec.variant = FobiVariant::ica; }
      else if (token == "boot2") { spec.mode = TestMode::boot_II; spec.variant = FobiVariant::ngca; }
      else throw InvalidInput("unknown fobi method '" + token + "'");
      return spec;
    }
    case SimFamily::sir: {
      if (token == "asymp") spec.mode = TestMode::asymptotic;
      else if (token == "boot") spec.mode = TestMode::boot_I;
      else throw InvalidInput("unknown sir method '" + token + "'");
      return spec;
    }
  }
  throw InvalidInput("unknown method family");
}

std::pair<DataTable, std::optional<Eigen::VectorXd>> simulate_model(const SimulationSpec& spec,
                                                                    int rep_index) {
  const int p = spec.p;
  const int n = spec.n;
  const int q = sim_signal_dimension(spec.model);
  if (p < q + 1) throw InvalidInput("simulate_model: need p >= q + 1");
  if (n < p + 2) throw InvalidInput("simulate_model: need n >= p + 2");

  RngStream rng(spec.master_seed, static_cast<std::uint64_t>(rep_index), kDataPath);
  Eigen::MatrixXd x(n, p);
  std::optional<Eigen::VectorXd> y;

  switch (spec.model) {
    case SimModel::pca_m1:
    case SimModel::pca_m2: {
      const Eigen::MatrixXd loadings = factor_loadings(p);
      for (int i = 0; i < n; ++i) {
        Eigen::Vector3d z;
        if (spec.model == SimModel::pca_m1) {
          z << rng.normal(), rng.normal(), rng.normal();
        } else {
          z << std_exponential(rng), std_chisq1(rng), std_t5(rng);
        }
        x.row(i) = (loadings * z + rng.normal_vector(p)).transpose();
      }
      break;
    }
    case SimModel::pca_m3: {
      // Elliptical t_5 with Cov = diag(3,2,2,1,...,1): Gaussian with scale
      // (3/5) * Cov divided by an independent sqrt(chi^2_5 / 5).
      const Eigen::VectorXd scale = (0.6 * target_spectrum(p)).cwiseSqrt();
      for (int i = 0; i < n; ++i) {
        const Eigen::VectorXd gauss = rng.normal_vector(p);
        const double mult = std::sqrt(5.0 / rng.chi_square(5));
        x.row(i) = (scale.cwiseProduct(gauss) * mult).transpose();
      }
      break;
    }
    case SimModel::ica_m1:
    case SimModel::ica_m2: {
      for (int i = 0; i < n; ++i) {
        x(i, 0) = std_exponential(rng);
        x(i, 1) = std_chisq2(rng);
        x(i, 2) = spec.model == SimModel::ica_m1 ? std_uniform(rng) : std_t5(rng);
        for (int j = 3; j < p; ++j) x(i, j) = rng.normal();
      }
      break;
    }
    case SimModel::sir_m1:
    case SimModel::sir_m2: {
      Eigen::VectorXd response(n);
      for (int i = 0; i < n; ++i) {
        const Eigen::VectorXd z = rng.normal_vector(p);
        const double noise = 0.5 * rng.normal();  // N(0, 0.25)
        const double z1 = z(0);
        const double z2 = z(1);
        response(i) = spec.model == SimModel::sir_m1
                          ? z1 * (z1 + z2 + 1.0) + noise
                          : z1 / (0.5 + (z2 + 1.5) * (z2 + 1.5)) + noise;
        x.row(i) = z.transpose();
      }
      y = std::move(response);
      break;
    }
  }

  if (spec.mix) {
    RngStream mix_rng(spec.master_seed, static_cast<std::uint64_t>(rep_index), kMixPath);
    x = (x * random_mixing(p, mix_rng).transpose()).eval();
  }
  return {DataTable(std::move(x)), std::move(y)};
}

RejectionReport rejection_rate(const SimulationSpec& spec) {
  if (spec.reps < 1) throw InvalidInput("rejection_rate: need at least one repetition");
  if (spec.methods.empty()) throw InvalidInput("rejection_rate: no methods given");
  std::vector<int> ks = spec.ks;
  if (ks.empty()) ks.push_back(sim_signal_dimension(spec.model));
  const SimFamily family = sim_family(spec.model);

  const std::size_t cell_count = spec.methods.size() * ks.size();
  // outcome per (rep, cell): 0 accept, 1 reject, 2 failed
  std::vector<std::uint8_t> outcomes(static_cast<std::size_t>(spec.reps) * cell_count, 0);

  const auto run_rep = [&](std::size_t rep) {
    std::optional<std::pair<DataTable, std::optional<Eigen::VectorXd>>> sample;
    try {
      sample = simulate_model(spec, static_cast<int>(rep));
    } catch (const Error&) {
      for (std::size_t c = 0; c < cell_count; ++c) outcomes[rep * cell_count + c] = 2;
      return;
    }
    const DataTable& x = sample->first;
    const std::optional<Eigen::VectorXd>& y = sample->second;
    for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
      const MethodSpec& method = spec.methods[mi];
      for (std::size_t ki = 0; ki < ks.size(); ++ki) {
        const int k = ks[ki];
        auto& outcome = outcomes[rep * cell_count + mi * ks.size() + ki];
        try {
          BootstrapConfig boot;
          boot.replicates = spec.bootstrap_replicates;
          boot.master_seed = derive_seed(spec.master_seed, rep, kBootPathBase + mi);
          boot.threads = 1;  // repetitions are the parallel axis
          double p_value = 1.0;
          switch (family) {
            case SimFamily::pca:
              p_value = method.mode == TestMode::asymptotic
                            ? pca_asymp_pvalue(x, k, method.scatter).p_value
                            : pca_boot_pvalue(x, k, method.scatter, method.mode, boot).p_value;
              break;
            case SimFamily::fobi:
              p_value = method.mode == TestMode::asymptotic
                            ? fobi_asymp_pvalue(x, k, method.variant).p_value
                            : fobi_boot_pvalue(x, k, method.variant, method.mode, boot).p_value;
              break;
            case SimFamily::sir:
              p_value = method.mode == TestMode::asymptotic
                            ? sir_asymp_pvalue(x, *y, k, spec.slice_count).p_value
                            : sir_boot_pvalue(x, *y, k, spec.slice_count, boot).p_value;
              break;
          }
          outcome = p_value <= spec.alpha ? 1 : 0;
        } catch (const Error&) {
          outcome = 2;  // recorded, not fatal
        }
      }
    }
  };
  parallel_for(static_cast<std::size_t>(spec.reps),
               spec.strict_sequential ? 1 : spec.threads, run_rep);

  RejectionReport report;
  report.master_seed = spec.master_seed;
  for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
    for (std::size_t ki = 0; ki < ks.size(); ++ki) {
      RejectionCell cell;
      cell.model = to_string(spec.model);
      cell.method = spec.methods[mi].token;
      cell.k = ks[ki];
      cell.n = spec.n;
      cell.p = spec.p;
      cell.slice_count = family == SimFamily::sir ? spec.slice_count : 0;
      cell.bootstrap_replicates =
          spec.methods[mi].mode == TestMode::asymptotic ? 0 : spec.bootstrap_replicates;
      cell.alpha = spec.alpha;
      int rejections = 0;
      for (std::size_t rep = 0; rep < static_cast<std::size_t>(spec.reps); ++rep) {
        const std::uint8_t outcome = outcomes[rep * cell_count + mi * ks.size() + ki];
        if (outcome == 2)
          ++cell.failed;
        else {
          ++cell.completed;
          rejections += outcome;
        }
      }
      cell.rate = cell.completed > 0 ? static_cast<double>(rejections) / cell.completed : 0.0;
      cell.se_bound = cell.completed > 0 ? 0.5 / std::sqrt(static_cast<double>(cell.completed)) : 0.0;
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

}  // namespace subdim

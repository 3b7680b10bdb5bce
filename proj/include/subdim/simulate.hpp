// The rejection-rate study harness: data-generating models for the PCA, ICA
// and SIR experiments, and per-cell rejection-rate estimation over repeated
// samples with deterministic per-repetition streams.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subdim/bootstrap.hpp"
#include "subdim/data.hpp"
#include "subdim/fobi.hpp"
#include "subdim/pca.hpp"
#include "subdim/sir.hpp"

namespace subdim {

enum class SimModel { pca_m1, pca_m2, pca_m3, ica_m1, ica_m2, sir_m1, sir_m2 };
enum class SimFamily { pca, fobi, sir };

SimModel sim_model_from_string(const std::string& name);
std::string to_string(SimModel model);
SimFamily sim_family(SimModel model);
int sim_signal_dimension(SimModel model);  // q: 3 for PCA/ICA models, 2 for SIR

// One test method within a family, parsed from a token such as "asymp",
// "tyler3-asymp", "boot2" (PCA), "asy1"/"boot1" (FOBI) or "boot" (SIR).
struct MethodSpec {
  std::string token;
  TestMode mode = TestMode::asymptotic;
  PcaScatter scatter = PcaScatter::cov;     // pca only
  FobiVariant variant = FobiVariant::ica;   // fobi only
};

MethodSpec parse_method(SimFamily family, const std::string& token);

struct SimulationSpec {
  SimModel model = SimModel::pca_m1;
  int p = 6;
  int n = 1000;
  int reps = 500;            // N
  int bootstrap_replicates = 200;  // M
  double alpha = 0.05;
  std::uint64_t master_seed = 0;
  int slice_count = 10;      // SIR
  bool mix = false;          // apply a random nonsingular mixing matrix
  int threads = 1;
  bool strict_sequential = false;
  std::vector<MethodSpec> methods;
  std::vector<int> ks;       // hypotheses to test; empty means {q}
};

// Deterministic in (spec.master_seed, rep_index).
std::pair<DataTable, std::optional<Eigen::VectorXd>> simulate_model(const SimulationSpec& spec,
                                                                    int rep_index);

// Standardized (mean 0, variance 1) marginal generators used by the models.
namespace marginals {
double std_exponential(RngStream& rng);  // Exp(1) - 1
double std_chisq1(RngStream& rng);       // (chi2_1 - 1) / sqrt(2)
double std_chisq2(RngStream& rng);       // (chi2_2 - 2) / 2
double std_t5(RngStream& rng);           // t_5 * sqrt(3/5)
double std_uniform(RngStream& rng);      // (U - 1/2) * sqrt(12)
}  // namespace marginals

struct RejectionCell {
  std::string model;
  std::string method;
  int k = 0;
  int n = 0;
  int p = 0;
  int slice_count = 0;
  int bootstrap_replicates = 0;
  double alpha = 0.05;
  int completed = 0;
  int failed = 0;
  double rate = 0.0;
  double se_bound = 0.0;  // 1 / (2 sqrt(N))
};

struct RejectionReport {
  std::vector<RejectionCell> cells;
  std::uint64_t master_seed = 0;
};

RejectionReport rejection_rate(const SimulationSpec& spec);

}  // namespace subdim

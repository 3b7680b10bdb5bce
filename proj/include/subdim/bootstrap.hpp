// Generic bootstrap p-value machinery, the alpha schedule, and sequential
// test-based dimension estimation shared by all three test families.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "subdim/rng.hpp"

namespace subdim {

// How a test's p-value was computed; boot_I / boot_II name the two null
// resampling strategies of each family (SIR has a single one, boot_I).
enum class TestMode { asymptotic, boot_I, boot_II };

struct BootstrapConfig {
  int replicates = 200;           // M
  std::uint64_t master_seed = 0;
  int threads = 1;                // 0 = auto
  bool strict_sequential = false; // force a single in-order worker
};

struct BootstrapPvalue {
  double p_hat = 1.0;          // (#{T_i* >= T} + 1) / (M + 1)
  double variance = 0.0;       // p_hat (1 - p_hat) / M
  int exceedances = 0;
  std::vector<double> scores;  // per-replicate statistics, index order
};

// Runs M replicates with independent streams derived from the master seed;
// replicate i draws from stream i (stream M + i on one retry after a numeric
// failure, then ReplicateFailure). Results are invariant to scheduling.
BootstrapPvalue bootstrap_pvalue(double t_obs,
                                 const std::function<double(RngStream&)>& replicate_score,
                                 const BootstrapConfig& config);

// Test-size schedule alpha_{n} = (n0 / n) alpha0 for n >= n0, else alpha0.
double alpha_schedule(long n, long n0, double alpha0);

enum class EstimationStrategy { bottom_up, top_down, divide_conquer };

struct DimensionDecision {
  int k = 0;
  double statistic = 0.0;
  double p_value = 1.0;
  double level = 0.0;
  bool accepted = false;
};

struct DimensionEstimate {
  int q_hat = 0;
  EstimationStrategy strategy = EstimationStrategy::bottom_up;
  std::vector<DimensionDecision> decisions;  // in test order, each k at most once
  std::string level_rule;
  bool saturated = false;  // every tested hypothesis rejected
  std::vector<std::string> warnings;
};

// test(k) -> (statistic, p-value) for k in [0, p_max - 1]; level_for_k gives
// the per-k size. Divide-and-conquer assumes a monotone accept region and
// falls back to bottom-up (with a warning) when the observed decisions
// contradict that assumption; test results are memoized so each k runs once.
DimensionEstimate estimate_dimension(const std::function<std::pair<double, double>(int)>& test,
                                     int p_max, EstimationStrategy strategy,
                                     const std::function<double(int)>& level_for_k);

}  // namespace subdim

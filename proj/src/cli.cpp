#include "subdim/cli.hpp"

#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "subdim/errors.hpp"
#include "subdim/io.hpp"
#include "subdim/parallel.hpp"

namespace subdim {

namespace {

using nlohmann::json;

struct CommonOptions {
  std::uint64_t seed = 0;
  std::string threads = "1";
  bool strict_sequential = false;
  std::string out;
  std::string format;  // per-command default when empty
};

void add_common(CLI::App* app, CommonOptions& common) {
  app->add_option("--seed", common.seed, "master seed (64-bit)");
  app->add_option("--threads", common.threads, "worker threads, or 'auto'");
  app->add_flag("--strict-sequential", common.strict_sequential,
                "single in-order worker for bit-exact reproduction");
  app->add_option("--out", common.out, "output path (default: standard output)");
  app->add_option("--format", common.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

int thread_count(const CommonOptions& common) {
  if (common.threads == "auto") return 0;
  try {
    const int value = std::stoi(common.threads);
    if (value < 0) throw std::invalid_argument("negative");
    return value;
  } catch (const std::exception&) {
    throw InvalidInput("--threads expects a nonnegative integer or 'auto'");
  }
}

void write_output(const CommonOptions& common, const std::string& text) {
  if (common.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream file(common.out);
  if (!file) throw ParseError("cannot write to '" + common.out + "'");
  file << text;
}

json flattened(const json& result) {
  json flat;
  for (const auto& [key, value] : result.items()) {
    if (key == "df_or_mixture") {
      for (const auto& [inner_key, inner_value] : value.items()) flat[inner_key] = inner_value;
    } else if (value.is_array()) {
      flat[key] = value.empty() ? "" : value.dump();
    } else {
      flat[key] = value;
    }
  }
  return flat;
}

void emit_result(const CommonOptions& common, const json& result) {
  const std::string format = common.format.empty() ? "json" : common.format;
  write_output(common, format == "json" ? result.dump(2) : result_csv_line(flattened(result)));
}

BootstrapConfig boot_config(const CommonOptions& common, int replicates) {
  BootstrapConfig config;
  config.replicates = replicates;
  config.master_seed = common.seed;
  config.threads = thread_count(common);
  config.strict_sequential = common.strict_sequential;
  return config;
}

TestMode parse_mode(const std::string& method) {
  if (method == "asymp") return TestMode::asymptotic;
  if (method == "boot1") return TestMode::boot_I;
  if (method == "boot2" ) return TestMode::boot_II;
  if (method == "boot") return TestMode::boot_I;
  throw InvalidInput("unknown method '" + method + "'");
}

PcaScatter parse_scatter(const std::string& scatter) {
  if (scatter == "cov") return PcaScatter::cov;
  if (scatter == "tyler") return PcaScatter::tyler;
  if (scatter == "tyler3") return PcaScatter::tyler3;
  throw InvalidInput("unknown scatter '" + scatter + "'");
}

struct EstimateLevel {
  double alpha = 0.05;
  std::string schedule;  // "n0,alpha0" when set
};

std::pair<std::function<double(int)>, std::string> level_source(const EstimateLevel& level,
                                                                long n) {
  if (level.schedule.empty()) {
    const double alpha = level.alpha;
    return {[alpha](int) { return alpha; }, "fixed alpha=" + std::to_string(alpha)};
  }
  std::stringstream stream(level.schedule);
  std::string n0_text, alpha0_text;
  if (!std::getline(stream, n0_text, ',') || !std::getline(stream, alpha0_text))
    throw InvalidInput("--alpha-schedule expects 'n0,alpha0'");
  const long n0 = std::stol(n0_text);
  const double alpha0 = std::stod(alpha0_text);
  const double value = alpha_schedule(n, n0, alpha0);
  return {[value](int) { return value; },
          "alpha_(k,n) = (n0/n) alpha0 with n0=" + std::to_string(n0) +
              ", alpha0=" + std::to_string(alpha0)};
}

int run(int argc, const char* const* argv) {
  CLI::App app{"subdim: subspace dimension tests via pairs of scatter matrices"};
  app.require_subcommand(1);

  // ---- pca ----
  auto* pca_cmd = app.add_subcommand("pca", "subsphericity test for PCA");
  CommonOptions pca_common;
  std::string pca_path, pca_scatter = "cov", pca_method = "asymp", pca_statistic = "T";
  int pca_k = 0, pca_m = 500;
  bool pca_tyler_full_boot = false;
  pca_cmd->add_option("data", pca_path, "input CSV")->required();
  pca_cmd->add_option("--k", pca_k, "tested signal dimension")->required();
  pca_cmd->add_option("--scatter", pca_scatter)->check(CLI::IsMember({"cov", "tyler", "tyler3"}));
  pca_cmd->add_option("--method", pca_method)->check(CLI::IsMember({"asymp", "boot1", "boot2"}));
  pca_cmd->add_option("--M", pca_m, "bootstrap replicates");
  pca_cmd->add_option("--statistic", pca_statistic)->check(CLI::IsMember({"T", "L"}));
  pca_cmd->add_flag("--tyler-boot-full", pca_tyler_full_boot,
                    "full Tyler iteration inside bootstrap replicates (default: 3-step)");
  add_common(pca_cmd, pca_common);

  // ---- fobi ----
  auto* fobi_cmd = app.add_subcommand("fobi", "non-Gaussian dimension test via FOBI");
  CommonOptions fobi_common;
  std::string fobi_path, fobi_variant = "ica", fobi_method = "asymp";
  int fobi_k = 0, fobi_m = 500;
  fobi_cmd->add_option("data", fobi_path, "input CSV")->required();
  fobi_cmd->add_option("--k", fobi_k, "tested signal dimension")->required();
  fobi_cmd->add_option("--variant", fobi_variant)->check(CLI::IsMember({"ica", "ngca"}));
  fobi_cmd->add_option("--method", fobi_method)->check(CLI::IsMember({"asymp", "boot1", "boot2"}));
  fobi_cmd->add_option("--M", fobi_m, "bootstrap replicates");
  add_common(fobi_cmd, fobi_common);

  // ---- sir ----
  auto* sir_cmd = app.add_subcommand("sir", "dimension test for sliced inverse regression");
  CommonOptions sir_common;
  std::string sir_path, sir_response, sir_method = "asymp";
  int sir_k = 0, sir_m = 500, sir_slices = 10;
  bool sir_freeze = false;
  sir_cmd->add_option("data", sir_path, "input CSV")->required();
  sir_cmd->add_option("--k", sir_k, "tested signal dimension")->required();
  sir_cmd->add_option("--response", sir_response, "response column name")->required();
  sir_cmd->add_option("--slices", sir_slices, "slice count H");
  sir_cmd->add_option("--method", sir_method)->check(CLI::IsMember({"asymp", "boot"}));
  sir_cmd->add_option("--M", sir_m, "bootstrap replicates");
  sir_cmd->add_flag("--freeze-slices", sir_freeze,
                    "reuse original slice boundaries inside bootstrap replicates");
  add_common(sir_cmd, sir_common);

  // ---- estimate ----
  auto* est_cmd = app.add_subcommand("estimate", "sequential test-based dimension estimate");
  CommonOptions est_common;
  std::string est_path, est_family, est_strategy = "bottom-up", est_method = "asymp";
  std::string est_scatter = "cov", est_statistic = "T", est_variant = "ica", est_response;
  EstimateLevel est_level;
  int est_m = 500, est_slices = 10;
  bool est_freeze = false;
  est_cmd->add_option("data", est_path, "input CSV")->required();
  est_cmd->add_option("--family", est_family)->required()->check(
      CLI::IsMember({"pca", "fobi", "sir"}));
  est_cmd->add_option("--strategy", est_strategy)
      ->check(CLI::IsMember({"bottom-up", "top-down", "divide-conquer"}));
  est_cmd->add_option("--alpha", est_level.alpha, "fixed test size");
  est_cmd->add_option("--alpha-schedule", est_level.schedule, "'n0,alpha0' size schedule");
  est_cmd->add_option("--method", est_method,
                      "per-k test: asymp, boot1, boot2 (pca/fobi), boot (sir)");
  est_cmd->add_option("--scatter", est_scatter)->check(CLI::IsMember({"cov", "tyler", "tyler3"}));
  est_cmd->add_option("--statistic", est_statistic)->check(CLI::IsMember({"T", "L"}));
  est_cmd->add_option("--variant", est_variant)->check(CLI::IsMember({"ica", "ngca"}));
  est_cmd->add_option("--response", est_response, "response column (sir)");
  est_cmd->add_option("--slices", est_slices, "slice count H (sir)");
  est_cmd->add_option("--M", est_m, "bootstrap replicates");
  est_cmd->add_flag("--freeze-slices", est_freeze);
  add_common(est_cmd, est_common);

  // ---- simulate ----
  auto* sim_cmd = app.add_subcommand("simulate", "rejection-rate study at a model cell");
  CommonOptions sim_common;
  std::string sim_model;
  std::vector<std::string> sim_methods;
  std::vector<int> sim_ks;
  SimulationSpec sim_spec;
  sim_cmd->add_option("--model", sim_model)->required();
  sim_cmd->add_option("--p", sim_spec.p)->required();
  sim_cmd->add_option("--n", sim_spec.n)->required();
  sim_cmd->add_option("--reps", sim_spec.reps, "repetitions N");
  sim_cmd->add_option("--M", sim_spec.bootstrap_replicates, "bootstrap replicates");
  sim_cmd->add_option("--methods", sim_methods, "comma-separated method tokens")
      ->required()
      ->delimiter(',');
  sim_cmd->add_option("--alpha", sim_spec.alpha);
  sim_cmd->add_option("--k", sim_ks, "tested k values (default: the model's true q)")
      ->delimiter(',');
  sim_cmd->add_option("--slices", sim_spec.slice_count, "slice count H (sir models)");
  sim_cmd->add_flag("--mix", sim_spec.mix, "apply a random nonsingular mixing matrix");
  add_common(sim_cmd, sim_common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (pca_cmd->parsed()) {
    const auto [x, unused_y] = load_table(pca_path);
    const TestMode mode = parse_mode(pca_method);
    const PcaScatter scatter = parse_scatter(pca_scatter);
    const PcaStatistic statistic =
        pca_statistic == "T" ? PcaStatistic::T : PcaStatistic::L;
    PcaTestResult result;
    if (mode == TestMode::asymptotic) {
      result = pca_asymp_pvalue(x, pca_k, scatter, statistic);
    } else {
      PcaBootOptions options;
      options.statistic = statistic;
      options.full_tyler_in_replicates = pca_tyler_full_boot;
      result = pca_boot_pvalue(x, pca_k, scatter, mode, boot_config(pca_common, pca_m), options);
    }
    emit_result(pca_common, to_json(result, pca_common.seed));
    return 0;
  }

  if (fobi_cmd->parsed()) {
    const auto [x, unused_y] = load_table(fobi_path);
    const TestMode mode = parse_mode(fobi_method);
    const FobiVariant variant = fobi_variant == "ica" ? FobiVariant::ica : FobiVariant::ngca;
    const FobiTestResult result =
        mode == TestMode::asymptotic
            ? fobi_asymp_pvalue(x, fobi_k, variant)
            : fobi_boot_pvalue(x, fobi_k, variant, mode, boot_config(fobi_common, fobi_m));
    emit_result(fobi_common, to_json(result, fobi_common.seed));
    return 0;
  }

  if (sir_cmd->parsed()) {
    const auto [x, y] = load_table(sir_path, sir_response);
    const TestMode mode = parse_mode(sir_method);
    SirBootOptions options;
    options.freeze_slices = sir_freeze;
    const SirTestResult result =
        mode == TestMode::asymptotic
            ? sir_asymp_pvalue(x, *y, sir_k, sir_slices)
            : sir_boot_pvalue(x, *y, sir_k, sir_slices, boot_config(sir_common, sir_m), options);
    emit_result(sir_common, to_json(result, sir_common.seed));
    return 0;
  }

  if (est_cmd->parsed()) {
    EstimationStrategy strategy = EstimationStrategy::bottom_up;
    if (est_strategy == "top-down") strategy = EstimationStrategy::top_down;
    if (est_strategy == "divide-conquer") strategy = EstimationStrategy::divide_conquer;
    const TestMode mode = parse_mode(est_method);
    const PcaStatistic statistic = est_statistic == "T" ? PcaStatistic::T : PcaStatistic::L;
    const PcaScatter scatter = parse_scatter(est_scatter);
    const FobiVariant variant = est_variant == "ica" ? FobiVariant::ica : FobiVariant::ngca;

    std::optional<std::string> response;
    if (est_family == "sir") {
      if (est_response.empty()) {
        std::cerr << "error: estimate --family sir requires --response\n";
        return 1;
      }
      response = est_response;
    }
    const auto [x, y] = load_table(est_path, response);
    const int p = static_cast<int>(x.p());
    int p_max = p;
    if (est_family == "sir") p_max = std::min(p, est_slices - 1);

    const auto [level_for_k, rule] = level_source(est_level, static_cast<long>(x.n()));
    const auto test = [&](int k) -> std::pair<double, double> {
      if (est_family == "pca") {
        if (mode == TestMode::asymptotic) {
          const auto r = pca_asymp_pvalue(x, k, scatter, statistic);
          return {r.statistic, r.p_value};
        }
        PcaBootOptions options;
        options.statistic = statistic;
        const auto r = pca_boot_pvalue(x, k, scatter, mode, boot_config(est_common, est_m), options);
        return {r.statistic, r.p_value};
      }
      if (est_family == "fobi") {
        const auto r = mode == TestMode::asymptotic
                           ? fobi_asymp_pvalue(x, k, variant)
                           : fobi_boot_pvalue(x, k, variant, mode, boot_config(est_common, est_m));
        return {r.statistic, r.p_value};
      }
      SirBootOptions options;
      options.freeze_slices = est_freeze;
      const auto r = mode == TestMode::asymptotic
                         ? sir_asymp_pvalue(x, *y, k, est_slices)
                         : sir_boot_pvalue(x, *y, k, est_slices, boot_config(est_common, est_m),
                                           options);
      return {r.statistic, r.p_value};
    };

    DimensionEstimate estimate = estimate_dimension(test, p_max, strategy, level_for_k);
    estimate.level_rule = rule;
    if (estimate.saturated && est_family == "sir" && p_max < p)
      estimate.warnings.push_back("all testable hypotheses rejected; increase --slices to probe q >= " +
                                  std::to_string(p_max));
    emit_result(est_common, to_json(estimate, est_family, est_common.seed));
    return 0;
  }

  if (sim_cmd->parsed()) {
    sim_spec.model = sim_model_from_string(sim_model);
    sim_spec.master_seed = sim_common.seed;
    sim_spec.threads = thread_count(sim_common);
    sim_spec.strict_sequential = sim_common.strict_sequential;
    sim_spec.ks = sim_ks;
    const SimFamily family = sim_family(sim_spec.model);
    for (const auto& token : sim_methods)
      sim_spec.methods.push_back(parse_method(family, token));
    const RejectionReport report = rejection_rate(sim_spec);
    const std::string format = sim_common.format.empty() ? "csv" : sim_common.format;
    write_output(sim_common, format == "csv" ? to_csv(report) : to_json(report).dump(2));
    return 0;
  }

  return 1;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  try {
    return run(argc, argv);
  } catch (const InvalidK& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const InvalidSlices& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ColumnNotFound& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const InsufficientVariation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    // singular scatter, degenerate observations, failed replicates, ...
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace subdim

#include "subdim/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "subdim/errors.hpp"

namespace subdim {

namespace {

using nlohmann::json;

std::string trimmed(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream stream(line);
  while (std::getline(stream, cell, ',')) cells.push_back(trimmed(cell));
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t column) {
  const auto fail = [&](const std::string& reason) -> ParseError {
    return ParseError("row " + std::to_string(row) + ", column " + std::to_string(column + 1) +
                      ": " + reason + " ('" + cell + "')");
  };
  if (cell.empty()) throw fail("empty cell");
  double value = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw fail("not a number");
  if (!std::isfinite(value)) throw fail("non-finite value");
  return value;
}

}  // namespace

std::pair<DataTable, std::optional<Eigen::VectorXd>> load_table(
    const std::string& path, const std::optional<std::string>& response_column) {
  std::ifstream input(path);
  if (!input) throw ParseError("cannot open '" + path + "'");

  std::string line;
  if (!std::getline(input, line)) throw ParseError("'" + path + "' is empty");
  const std::vector<std::string> header = split_csv_line(line);
  if (header.empty()) throw ParseError("'" + path + "' has an empty header row");

  std::vector<std::vector<double>> rows;
  std::size_t row_number = 1;
  while (std::getline(input, line)) {
    ++row_number;
    if (trimmed(line).empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw ParseError("row " + std::to_string(row_number) + ": expected " +
                       std::to_string(header.size()) + " cells, found " +
                       std::to_string(cells.size()));
    std::vector<double> parsed(cells.size());
    for (std::size_t j = 0; j < cells.size(); ++j)
      parsed[j] = parse_cell(cells[j], row_number, j);
    rows.push_back(std::move(parsed));
  }
  if (rows.empty()) throw ParseError("'" + path + "' has no data rows");

  std::optional<std::size_t> response_index;
  if (response_column) {
    for (std::size_t j = 0; j < header.size(); ++j)
      if (header[j] == *response_column) response_index = j;
    if (!response_index)
      throw ColumnNotFound("response column '" + *response_column + "' not found in '" + path +
                           "'");
  }

  const std::size_t p = header.size() - (response_index ? 1 : 0);
  if (p == 0) throw ParseError("'" + path + "': no predictor columns left");
  Eigen::MatrixXd x(rows.size(), p);
  Eigen::VectorXd y(response_index ? rows.size() : 0);
  std::vector<std::string> names;
  for (std::size_t j = 0; j < header.size(); ++j)
    if (!response_index || j != *response_index) names.push_back(header[j]);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::size_t out = 0;
    for (std::size_t j = 0; j < header.size(); ++j) {
      if (response_index && j == *response_index)
        y(static_cast<Eigen::Index>(i)) = rows[i][j];
      else
        x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(out++)) = rows[i][j];
    }
  }
  std::optional<Eigen::VectorXd> response;
  if (response_index) response = std::move(y);
  return {DataTable(std::move(x), std::move(names)), std::move(response)};
}

std::string to_string(TestMode mode) {
  switch (mode) {
    case TestMode::asymptotic: return "asymptotic";
    case TestMode::boot_I: return "boot1";
    case TestMode::boot_II: return "boot2";
  }
  return "?";
}

std::string to_string(PcaScatter scatter) {
  switch (scatter) {
    case PcaScatter::cov: return "cov";
    case PcaScatter::tyler: return "tyler";
    case PcaScatter::tyler3: return "tyler3";
  }
  return "?";
}

std::string to_string(PcaStatistic statistic) {
  return statistic == PcaStatistic::T ? "T" : "L";
}

std::string to_string(FobiVariant variant) {
  return variant == FobiVariant::ica ? "ica" : "ngca";
}

std::string to_string(EstimationStrategy strategy) {
  switch (strategy) {
    case EstimationStrategy::bottom_up: return "bottom-up";
    case EstimationStrategy::top_down: return "top-down";
    case EstimationStrategy::divide_conquer: return "divide-conquer";
  }
  return "?";
}

namespace {

TestMode mode_from_string(const std::string& text) {
  if (text == "asymptotic") return TestMode::asymptotic;
  if (text == "boot1") return TestMode::boot_I;
  if (text == "boot2") return TestMode::boot_II;
  throw ParseError("unknown test mode '" + text + "'");
}

}  // namespace

namespace {

// Bootstrap p-values carry the p(1 - p)/M variance estimate of the engine.
void attach_pvalue_variance(json& j, double p_value, int replicates) {
  if (replicates > 0) j["p_value_variance"] = p_value * (1.0 - p_value) / replicates;
}

}  // namespace

json to_json(const PcaTestResult& result, std::uint64_t seed) {
  json j{{"family", "pca"},
         {"k", result.k},
         {"statistic", result.statistic},
         {"statistic_kind", to_string(result.statistic_kind)},
         {"p_value", result.p_value},
         {"mode", to_string(result.mode)},
         {"df_or_mixture", json{{"df", result.df}}},
         {"d_hat", result.d_hat},
         {"sigma1", result.sigma1},
         {"scatter", to_string(result.scatter_kind)},
         {"n", result.n},
         {"p", result.p},
         {"M", result.replicates},
         {"seed", seed},
         {"warnings", result.warnings}};
  attach_pvalue_variance(j, result.p_value, result.replicates);
  return j;
}

json to_json(const FobiTestResult& result, std::uint64_t seed) {
  json j{{"family", "fobi"},
         {"k", result.k},
         {"statistic", result.statistic},
         {"variant", to_string(result.variant)},
         {"p_value", result.p_value},
         {"mode", to_string(result.mode)},
         {"df_or_mixture",
          json{{"a", result.mix_a}, {"df_a", result.mix_df_a}, {"b", result.mix_b}}},
         {"sigma1", result.sigma1},
         {"sigma2", result.sigma2},
         {"scatter", "cov+fourth-moment"},
         {"n", result.n},
         {"p", result.p},
         {"M", result.replicates},
         {"seed", seed},
         {"warnings", result.warnings}};
  attach_pvalue_variance(j, result.p_value, result.replicates);
  return j;
}

json to_json(const SirTestResult& result, std::uint64_t seed) {
  json j{{"family", "sir"},
         {"k", result.k},
         {"statistic", result.statistic},
         {"p_value", result.p_value},
         {"mode", result.mode == TestMode::asymptotic ? "asymptotic" : "boot"},
         {"df_or_mixture", json{{"df", result.df}}},
         {"scatter", "cov+between-slice"},
         {"n", result.n},
         {"p", result.p},
         {"H", result.slice_count},
         {"M", result.replicates},
         {"seed", seed},
         {"warnings", result.warnings}};
  attach_pvalue_variance(j, result.p_value, result.replicates);
  return j;
}

json to_json(const DimensionEstimate& estimate, const std::string& family, std::uint64_t seed) {
  json decisions = json::array();
  for (const auto& decision : estimate.decisions)
    decisions.push_back(json{{"k", decision.k},
                             {"statistic", decision.statistic},
                             {"p_value", decision.p_value},
                             {"level", decision.level},
                             {"accepted", decision.accepted}});
  return json{{"family", family},
              {"q_hat", estimate.q_hat},
              {"strategy", to_string(estimate.strategy)},
              {"decisions", decisions},
              {"alpha_schedule", estimate.level_rule},
              {"saturated", estimate.saturated},
              {"seed", seed},
              {"warnings", estimate.warnings}};
}

json to_json(const RejectionReport& report) {
  json cells = json::array();
  for (const auto& cell : report.cells)
    cells.push_back(json{{"model", cell.model},
                         {"method", cell.method},
                         {"k", cell.k},
                         {"n", cell.n},
                         {"p", cell.p},
                         {"H", cell.slice_count},
                         {"M", cell.bootstrap_replicates},
                         {"alpha", cell.alpha},
                         {"completed", cell.completed},
                         {"failed", cell.failed},
                         {"rate", cell.rate},
                         {"se_bound", cell.se_bound}});
  return json{{"cells", cells}, {"seed", report.master_seed}};
}

PcaTestResult pca_result_from_json(const json& j) {
  PcaTestResult result;
  result.k = j.at("k").get<int>();
  result.statistic = j.at("statistic").get<double>();
  result.statistic_kind =
      j.at("statistic_kind").get<std::string>() == "T" ? PcaStatistic::T : PcaStatistic::L;
  result.p_value = j.at("p_value").get<double>();
  result.mode = mode_from_string(j.at("mode").get<std::string>());
  result.df = j.at("df_or_mixture").at("df").get<int>();
  result.d_hat = j.at("d_hat").get<double>();
  result.sigma1 = j.at("sigma1").get<double>();
  const std::string scatter = j.at("scatter").get<std::string>();
  result.scatter_kind = scatter == "cov"      ? PcaScatter::cov
                        : scatter == "tyler"  ? PcaScatter::tyler
                                              : PcaScatter::tyler3;
  result.n = j.at("n").get<long>();
  result.p = j.at("p").get<int>();
  result.replicates = j.at("M").get<int>();
  result.warnings = j.at("warnings").get<std::vector<std::string>>();
  return result;
}

FobiTestResult fobi_result_from_json(const json& j) {
  FobiTestResult result;
  result.k = j.at("k").get<int>();
  result.statistic = j.at("statistic").get<double>();
  result.variant =
      j.at("variant").get<std::string>() == "ica" ? FobiVariant::ica : FobiVariant::ngca;
  result.p_value = j.at("p_value").get<double>();
  result.mode = mode_from_string(j.at("mode").get<std::string>());
  result.mix_a = j.at("df_or_mixture").at("a").get<double>();
  result.mix_df_a = j.at("df_or_mixture").at("df_a").get<int>();
  result.mix_b = j.at("df_or_mixture").at("b").get<double>();
  result.sigma1 = j.at("sigma1").get<double>();
  result.sigma2 = j.at("sigma2").get<double>();
  result.n = j.at("n").get<long>();
  result.p = j.at("p").get<int>();
  result.replicates = j.at("M").get<int>();
  result.warnings = j.at("warnings").get<std::vector<std::string>>();
  return result;
}

SirTestResult sir_result_from_json(const json& j) {
  SirTestResult result;
  result.k = j.at("k").get<int>();
  result.statistic = j.at("statistic").get<double>();
  result.p_value = j.at("p_value").get<double>();
  result.mode =
      j.at("mode").get<std::string>() == "asymptotic" ? TestMode::asymptotic : TestMode::boot_I;
  result.df = j.at("df_or_mixture").at("df").get<int>();
  result.slice_count = j.at("H").get<int>();
  result.n = j.at("n").get<long>();
  result.p = j.at("p").get<int>();
  result.replicates = j.at("M").get<int>();
  result.warnings = j.at("warnings").get<std::vector<std::string>>();
  return result;
}

std::string to_csv(const RejectionReport& report) {
  std::ostringstream out;
  out << "model,method,k,n,p,H,M,alpha,completed,failed,rate,se_bound\n";
  out.precision(10);
  for (const auto& cell : report.cells) {
    out << cell.model << ',' << cell.method << ',' << cell.k << ',' << cell.n << ',' << cell.p
        << ',' << cell.slice_count << ',' << cell.bootstrap_replicates << ',' << cell.alpha << ','
        << cell.completed << ',' << cell.failed << ',' << cell.rate << ',' << cell.se_bound
        << '\n';
  }
  return out.str();
}

namespace {

std::string csv_escaped(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string quoted = "\"";
  for (char c : cell) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

std::string result_csv_line(const json& flat_result) {
  std::ostringstream header;
  std::ostringstream row;
  bool first = true;
  for (const auto& [key, value] : flat_result.items()) {
    if (value.is_object() || value.is_array()) continue;  // nested fields stay JSON-only
    header << (first ? "" : ",") << key;
    row << (first ? "" : ",")
        << csv_escaped(value.is_string() ? value.get<std::string>() : value.dump());
    first = false;
  }
  return header.str() + "\n" + row.str() + "\n";
}

}  // namespace subdim

// CSV ingestion and result serialization (JSON and CSV).
#pragma once

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>

#include "subdim/bootstrap.hpp"
#include "subdim/data.hpp"
#include "subdim/fobi.hpp"
#include "subdim/pca.hpp"
#include "subdim/simulate.hpp"
#include "subdim/sir.hpp"

namespace subdim {

// Strict CSV: header row required, comma separator, finite numeric cells.
// A named response column is removed from X and returned separately.
std::pair<DataTable, std::optional<Eigen::VectorXd>> load_table(
    const std::string& path, const std::optional<std::string>& response_column = std::nullopt);

std::string to_string(TestMode mode);
std::string to_string(PcaScatter scatter);
std::string to_string(PcaStatistic statistic);
std::string to_string(FobiVariant variant);
std::string to_string(EstimationStrategy strategy);

nlohmann::json to_json(const PcaTestResult& result, std::uint64_t seed);
nlohmann::json to_json(const FobiTestResult& result, std::uint64_t seed);
nlohmann::json to_json(const SirTestResult& result, std::uint64_t seed);
nlohmann::json to_json(const DimensionEstimate& estimate, const std::string& family,
                       std::uint64_t seed);
nlohmann::json to_json(const RejectionReport& report);

PcaTestResult pca_result_from_json(const nlohmann::json& j);
FobiTestResult fobi_result_from_json(const nlohmann::json& j);
SirTestResult sir_result_from_json(const nlohmann::json& j);

// One header line plus one row per cell / result.
std::string to_csv(const RejectionReport& report);
std::string result_csv_line(const nlohmann::json& flat_result);

}  // namespace subdim

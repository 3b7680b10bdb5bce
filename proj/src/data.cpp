#include "subdim/data.hpp"

#include "subdim/errors.hpp"

namespace subdim {

DataTable::DataTable(Eigen::MatrixXd rows, std::vector<std::string> column_names)
    : rows_(std::move(rows)), column_names_(std::move(column_names)) {
  if (rows_.rows() < 2) throw InvalidInput("DataTable: need at least two observations");
  if (rows_.cols() < 1) throw InvalidInput("DataTable: need at least one variable");
  if (!rows_.allFinite()) throw InvalidInput("DataTable: non-finite entries");
  if (column_names_.empty()) {
    column_names_.reserve(static_cast<std::size_t>(rows_.cols()));
    for (Eigen::Index j = 0; j < rows_.cols(); ++j)
      column_names_.push_back("x" + std::to_string(j + 1));
  }
  if (static_cast<Eigen::Index>(column_names_.size()) != rows_.cols())
    throw InvalidInput("DataTable: column name count does not match column count");
}

}  // namespace subdim

// Observation table: n x p matrix of finite reals with column labels.
#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace subdim {

class DataTable {
 public:
  // Validates n >= 2, p >= 1, finite entries. Empty name list gets x1..xp.
  explicit DataTable(Eigen::MatrixXd rows, std::vector<std::string> column_names = {});

  Eigen::Index n() const { return rows_.rows(); }
  Eigen::Index p() const { return rows_.cols(); }
  const Eigen::MatrixXd& rows() const { return rows_; }
  const std::vector<std::string>& column_names() const { return column_names_; }

 private:
  Eigen::MatrixXd rows_;
  std::vector<std::string> column_names_;
};

}  // namespace subdim

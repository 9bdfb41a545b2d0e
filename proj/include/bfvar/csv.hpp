// Strict numeric CSV: UTF-8, one header row, comma separated, every body
// cell numeric, no missing cells. Values are written with 17 significant
// digits so that emitted files re-parse to identical doubles.

#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace bfvar::csv {

struct Table {
  std::vector<std::string> columns;
  Eigen::MatrixXd values;  // rows x columns, row order preserved

  Eigen::Index column_index(const std::string& name) const;
  Eigen::VectorXd column(const std::string& name) const;
};

/// Parses a file; throws InputError naming the offending row/column.
Table read_file(const std::string& path);

/// Parses in-memory text (used by tests and by read_file).
Table parse(const std::string& text, const std::string& origin);

/// Formats a double with 17 significant digits.
std::string format_value(double v);

std::string to_string(const std::vector<std::string>& header,
                      const Eigen::MatrixXd& values);

void write_file(const std::string& path,
                const std::vector<std::string>& header,
                const Eigen::MatrixXd& values);

}  // namespace bfvar::csv

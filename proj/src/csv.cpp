#include "bfvar/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bfvar/errors.hpp"

namespace bfvar::csv {

Eigen::Index Table::column_index(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end())
    throw InputError("csv: no column named '" + name + "'");
  return static_cast<Eigen::Index>(it - columns.begin());
}

Eigen::VectorXd Table::column(const std::string& name) const {
  return values.col(column_index(name));
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else {
      cell.push_back(c);
    }
  }
  cells.push_back(cell);
  return cells;
}

double parse_cell(const std::string& cell, const std::string& origin,
                  std::size_t row, std::size_t col) {
  const auto begin = cell.find_first_not_of(" \t");
  const auto end = cell.find_last_not_of(" \t");
  if (begin == std::string::npos)
    throw InputError(origin + ": empty cell at row " + std::to_string(row) +
                     ", column " + std::to_string(col + 1));
  double value = 0.0;
  const char* first = cell.data() + begin;
  const char* last = cell.data() + end + 1;
  const auto r = std::from_chars(first, last, value);
  if (r.ec != std::errc() || r.ptr != last)
    throw InputError(origin + ": non-numeric cell '" + cell + "' at row " +
                     std::to_string(row) + ", column " +
                     std::to_string(col + 1));
  return value;
}

}  // namespace

Table parse(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  Table table;
  std::vector<std::vector<double>> rows;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_number == 1) {
      table.columns = split_line(line);
      if (table.columns.size() == 1 && table.columns[0].empty())
        throw InputError(origin + ": empty header row");
      continue;
    }
    if (line.empty() && in.eof()) break;  // trailing newline
    const auto cells = split_line(line);
    if (cells.size() != table.columns.size())
      throw InputError(origin + ": row " + std::to_string(line_number) +
                       " has " + std::to_string(cells.size()) +
                       " cells, expected " +
                       std::to_string(table.columns.size()));
    std::vector<double> parsed(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c)
      parsed[c] = parse_cell(cells[c], origin, line_number, c);
    rows.push_back(std::move(parsed));
  }
  if (table.columns.empty()) throw InputError(origin + ": empty file");
  if (rows.empty()) throw InputError(origin + ": no data rows");
  table.values = Eigen::MatrixXd(static_cast<Eigen::Index>(rows.size()),
                                 static_cast<Eigen::Index>(table.columns.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      table.values(static_cast<Eigen::Index>(r),
                   static_cast<Eigen::Index>(c)) = rows[r][c];
  return table;
}

Table read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("csv: cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path);
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string to_string(const std::vector<std::string>& header,
                      const Eigen::MatrixXd& values) {
  if (static_cast<Eigen::Index>(header.size()) != values.cols())
    throw std::invalid_argument("csv: header/value column mismatch");
  std::string out;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c) out.push_back(',');
    out += header[c];
  }
  out.push_back('\n');
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      if (c) out.push_back(',');
      out += format_value(values(r, c));
    }
    out.push_back('\n');
  }
  return out;
}

void write_file(const std::string& path,
                const std::vector<std::string>& header,
                const Eigen::MatrixXd& values) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("csv: cannot write '" + path + "'");
  out << to_string(header, values);
  if (!out) throw InputError("csv: write failed for '" + path + "'");
}

}  // namespace bfvar::csv

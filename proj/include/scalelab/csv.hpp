#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "scalelab/types.hpp"

namespace scalelab {

// Writes numbers with 17 significant digits so reruns are byte-identical
// and round-trips are lossless.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) : out_(path) {
    if (!out_) throw ConfigError("cannot write " + path);
  }

  void header(const std::vector<std::string>& names) { write_strings(names); }

  void row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out_ << ',';
      out_ << format_double(values[i]);
    }
    out_ << '\n';
  }

  void mixed_row(const std::vector<std::string>& cells) { write_strings(cells); }

 private:
  void write_strings(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  std::ofstream out_;
};

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  int column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return static_cast<int>(i);
    throw ConfigError("column \"" + name + "\" not found");
  }

  static CsvTable read(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw ConfigError(path + " is empty");
    table.columns = split(line);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::vector<std::string> cells = split(line);
      if (cells.size() != table.columns.size())
        throw ConfigError(path + " has a row with the wrong number of fields");
      std::vector<double> row;
      row.reserve(cells.size());
      for (const std::string& cell : cells) {
        try {
          row.push_back(cell.empty() ? 0.0 : std::stod(cell));
        } catch (const std::exception&) {
          throw ConfigError(path + " holds a non-numeric field \"" + cell + "\"");
        }
      }
      table.rows.push_back(std::move(row));
    }
    return table;
  }

 private:
  static std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
  }
};

}  // namespace scalelab

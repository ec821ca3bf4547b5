#pragma once
// One result table per run, written as CSV or as JSON with the same columns.

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace lhybrid::cli {

using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

enum class Format { kCsv, kJson };

struct RunHeader {
  std::string command;
  std::string config_hash;
};

void write_table(std::ostream& out, const Table& table, Format format, const RunHeader& header);

}  // namespace lhybrid::cli

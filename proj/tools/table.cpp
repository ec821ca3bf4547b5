#include "table.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "lhybrid/report.hpp"

namespace lhybrid::cli {

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("table row width does not match the columns");
  rows.push_back(std::move(row));
}

namespace {

std::string csv_cell(const Cell& c) {
  struct {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(const std::string& v) const {
      if (v.find_first_of(",\"\n") == std::string::npos) return v;
      std::string out = "\"";
      for (const char ch : v) {
        if (ch == '"') out += '"';
        out += ch;
      }
      return out + '"';
    }
  } visit;
  return std::visit(visit, c);
}

nlohmann::ordered_json json_cell(const Cell& c) {
  struct {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
    nlohmann::ordered_json operator()(double v) const {
      if (!std::isfinite(v)) return nullptr;
      return v;
    }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
  } visit;
  return std::visit(visit, c);
}

}  // namespace

void write_table(std::ostream& out, const Table& table, Format format, const RunHeader& header) {
  if (format == Format::kCsv) {
    write_output_header(out, header.command, header.config_hash);
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
      out << '\n';
    }
    return;
  }
  nlohmann::ordered_json j;
  j["lhybrid"] = std::string(library_version());
  j["command"] = header.command;
  j["config_hash"] = header.config_hash;
  j["columns"] = table.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r;
    for (std::size_t i = 0; i < row.size(); ++i) r[table.columns[i]] = json_cell(row[i]);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  out << j.dump(1) << '\n';
}

}  // namespace lhybrid::cli

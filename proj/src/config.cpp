#include "lhybrid/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace lhybrid {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

FlatConfig parse_flat_config(std::istream& in, const std::string& source) {
  FlatConfig cfg;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = source + ":" + std::to_string(line_no);
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(where + ": empty key");
    if (cfg.has(key)) throw ConfigError(where + ": key '" + key + "' repeated");
    std::vector<std::string> items;
    std::string rest = line.substr(eq + 1);
    std::size_t start = 0;
    while (true) {
      const auto comma = rest.find(',', start);
      const std::string item = trim(rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      if (item.empty()) throw ConfigError(where + ": empty list item for '" + key + "'");
      items.push_back(item);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    cfg.values[key] = std::move(items);
    cfg.lines[key] = line_no;
  }
  return cfg;
}

FlatConfig load_flat_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_flat_config(in, path);
}

std::int64_t parse_int(const std::string& text, const std::string& field) {
  std::int64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError(field + ": '" + text + "' is not an integer");
  return v;
}

double parse_real(const std::string& text, const std::string& field) {
  double v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ConfigError(field + ": '" + text + "' is not a finite number");
  }
  return v;
}

}  // namespace lhybrid

#pragma once
// Flat key = value text files with comma-separated lists. '#' starts a comment.
//
//   command = moment
//   q = 1009, 10007
//   X = 10, 20   # trailing comments are fine

#include <cstdint>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace lhybrid {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FlatConfig {
  std::map<std::string, std::vector<std::string>> values;  // key -> list items
  std::map<std::string, int> lines;                        // key -> source line

  bool has(const std::string& key) const { return values.count(key) != 0; }
};

/// Throws ConfigError naming the line for syntax errors and repeated keys.
FlatConfig parse_flat_config(std::istream& in, const std::string& source = "<config>");
FlatConfig load_flat_config(const std::string& path);

/// Element parsers; `field` is used in the error message (e.g. "q[1]").
std::int64_t parse_int(const std::string& text, const std::string& field);
double parse_real(const std::string& text, const std::string& field);

}  // namespace lhybrid

#pragma once
// Named numeric tolerances and frozen calibration constants.
//
// The defaults below are what the tests and the acceptance runner use. A
// registry file (flat key = value, see config.hpp) may override any of them for
// CLI --assert runs; unknown keys are rejected.

#include <map>
#include <string>
#include <utility>

namespace lhybrid {

class ToleranceRegistry {
 public:
  static ToleranceRegistry defaults();
  /// Defaults overridden by the file's entries.
  static ToleranceRegistry load(const std::string& path);

  double get(const std::string& key) const;
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  /// [key.lo, key.hi]
  std::pair<double, double> band(const std::string& key) const;
  bool in_band(const std::string& key, double v) const;

  const std::map<std::string, double>& values() const { return values_; }

 private:
  std::map<std::string, double> values_;
};

}  // namespace lhybrid

#include "lhybrid/tolerances.hpp"

#include "lhybrid/config.hpp"

namespace lhybrid {

ToleranceRegistry ToleranceRegistry::defaults() {
  ToleranceRegistry r;
  r.values_ = {
      // characters and L-values
      {"orthogonality.deviation", 1e-6},
      {"dual.relative", 1e-6},
      {"functional_equation.relative", 1e-8},
      {"hardy.imag", 1e-8},
      // moment ratios, empirical / prediction
      {"moment.L.k1.lo", 0.80},
      {"moment.L.k1.hi", 1.25},
      {"moment.L.k1.drift", 1.5},
      {"moment.L.k2.lo", 0.4},
      {"moment.L.k2.hi", 1.6},
      {"moment.P.k1.lo", 0.85},
      {"moment.P.k1.hi", 1.15},
      {"moment.P.k2.lo", 0.7},
      {"moment.P.k2.hi", 1.3},
      {"moment.Z.k1.lo", 0.75},
      {"moment.Z.k1.hi", 1.3},
      {"moment.Z.k2.lo", 0.3},
      {"moment.Z.k2.hi", 2.0},
      {"barnes.exact", 1e-12},
      {"barnes.a2_product", 1e-8},
      // hybrid residual trend; envelope C (log X)^-2 + C' X^-1/2 log X.
      // C' from the odd characters mod 5 and 7 at X = 10, 50, 200 (gamma tail
      // below 1e-2 there), C from the even excess over C' X^-1/2 log X, both
      // rounded up by about 10%.
      {"hybrid.trend_slack", 0.10},
      {"hybrid.envelope.C", 0.50},
      {"hybrid.envelope.Cprime", 0.24},
      // coefficients and CUE
      {"coefficients.absolute", 1e-12},
      {"cue.stderr_units", 4.0},
      {"cue.asymptotic_relative", 0.05},
      {"cue.exact_relative", 1e-10},
      // W_1 near 0
      {"weight.W1.lo", 0.995},
      {"weight.W1.hi", 1.005},
  };
  return r;
}

ToleranceRegistry ToleranceRegistry::load(const std::string& path) {
  ToleranceRegistry r = defaults();
  const FlatConfig cfg = load_flat_config(path);
  for (const auto& [key, items] : cfg.values) {
    const std::string where = path + ":" + std::to_string(cfg.lines.at(key));
    if (!r.has(key)) throw ConfigError(where + ": unknown tolerance '" + key + "'");
    if (items.size() != 1) throw ConfigError(where + ": tolerance '" + key + "' takes one value");
    r.values_[key] = parse_real(items[0], key);
  }
  return r;
}

double ToleranceRegistry::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown tolerance '" + key + "'");
  return it->second;
}

std::pair<double, double> ToleranceRegistry::band(const std::string& key) const {
  return {get(key + ".lo"), get(key + ".hi")};
}

bool ToleranceRegistry::in_band(const std::string& key, double v) const {
  const auto [lo, hi] = band(key);
  return v >= lo && v <= hi;
}

}  // namespace lhybrid

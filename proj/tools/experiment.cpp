#include "experiment.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <memory>
#include <numbers>
#include <set>
#include <sstream>

#include "lhybrid/cache.hpp"
#include "lhybrid/chars.hpp"
#include "lhybrid/hybrid.hpp"
#include "lhybrid/kernels.hpp"
#include "lhybrid/lfunc.hpp"
#include "lhybrid/moments.hpp"
#include "lhybrid/parallel.hpp"
#include "lhybrid/report.hpp"
#include "lhybrid/rmt.hpp"
#include "lhybrid/specfun.hpp"
#include "lhybrid/tolerances.hpp"

namespace lhybrid::cli {
namespace {

const std::set<std::string> kCommon = {"command", "threads", "kernel", "format",
                                       "out",     "assert",  "tolerances", "cache_dir"};

const std::map<std::string, std::set<std::string>> kCommandKeys = {
    {"chars", {"q", "m_max"}},
    {"lvalues", {"q", "tail"}},
    {"zeros", {"q", "T", "chars", "step"}},
    {"hybrid", {"q", "X", "T", "chars"}},
    {"moment", {"q", "k", "X", "T", "which"}},
    {"rmt", {"N", "k", "samples", "seed"}},
    {"predict", {"q", "k", "X"}},
};

const std::map<std::string, std::set<std::string>> kRequired = {
    {"chars", {"q"}}, {"lvalues", {"q"}}, {"zeros", {"q", "T"}},         {"hybrid", {"q", "X"}},
    {"moment", {"q", "k"}}, {"rmt", {"N", "k", "samples", "seed"}}, {"predict", {"q", "k"}},
};

std::string field(const std::string& key, std::size_t i, std::size_t n) {
  return n == 1 ? key : key + "[" + std::to_string(i) + "]";
}

const std::string& single(const FlatConfig& cfg, const std::string& key) {
  const auto& items = cfg.values.at(key);
  if (items.size() != 1) throw ConfigError(key + ": expected a single value, got a list");
  return items[0];
}

std::vector<std::int64_t> int_list(const FlatConfig& cfg, const std::string& key, std::int64_t lo,
                                   std::int64_t hi) {
  std::vector<std::int64_t> out;
  const auto& items = cfg.values.at(key);
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string f = field(key, i, items.size());
    const std::int64_t v = parse_int(items[i], f);
    if (v < lo || v > hi) {
      throw ConfigError(f + ": " + items[i] + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<double> real_list(const FlatConfig& cfg, const std::string& key, double lo, double hi) {
  std::vector<double> out;
  const auto& items = cfg.values.at(key);
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string f = field(key, i, items.size());
    const double v = parse_real(items[i], f);
    if (v < lo || v > hi) {
      throw ConfigError(f + ": " + items[i] + " outside [" + format_double(lo) + ", " + format_double(hi) + "]");
    }
    out.push_back(v);
  }
  return out;
}

bool parse_bool(const std::string& text, const std::string& f) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(f + ": '" + text + "' is not a boolean");
}

void warn(const std::string& message) { std::cerr << "warning: " << message << '\n'; }

std::unique_ptr<Cache> open_cache(const ExperimentConfig& cfg) {
  if (!cfg.cache_dir.empty()) return std::make_unique<Cache>(cfg.cache_dir);
  if (const auto dir = Cache::env_dir()) return std::make_unique<Cache>(*dir);
  return nullptr;
}

std::shared_ptr<const CharacterGroup> group_for(std::int64_t q, Cache* cache) {
  return cache ? cache->character_group(q) : CharacterGroup::create(q);
}

// The requested characters of a group, or all primitive ones.
std::vector<DirichletCharacter> selected_characters(const CharacterGroup& group,
                                                    const std::vector<std::int64_t>& indices) {
  if (indices.empty()) return group.primitive_characters();
  std::vector<DirichletCharacter> out;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const auto idx = static_cast<std::size_t>(indices[i]);
    const std::string f = field("chars", i, indices.size());
    if (idx >= group.size()) {
      throw ConfigError(f + ": index " + std::to_string(idx) + " out of range for q = " +
                        std::to_string(group.modulus()));
    }
    auto chi = group.character(idx);
    if (!chi.is_primitive()) {
      throw ConfigError(f + ": character " + std::to_string(idx) + " mod " + std::to_string(group.modulus()) +
                        " is not primitive");
    }
    out.push_back(std::move(chi));
  }
  return out;
}

void check_has_primitive(std::int64_t q) {
  if (phi_star(q) == 0) throw ConfigError("q: no primitive characters mod " + std::to_string(q));
}

void regime_note(std::int64_t q, double X) {
  if (const auto w = regime_warning(q, X)) warn("q = " + std::to_string(q) + ": " + *w);
}

Cell opt_cell(const std::optional<double>& v) { return v ? Cell(*v) : Cell(); }

// ---------------------------------------------------------------- commands

RunResult run_chars(const ExperimentConfig& cfg, const ToleranceRegistry& tol, Cache* cache) {
  RunResult r;
  r.table.columns = {"q", "phi", "phi_star", "primitive_count", "even_primitive", "odd_primitive",
                     "exponent", "components", "divisor_sum_ok", "orthogonality_pairs",
                     "orthogonality_max_deviation", "orthogonality_mismatches"};
  struct Row {
    std::int64_t phi, phi_star, count, even, odd, exponent;
    std::string components;
    bool divisor_sum_ok;
    OrthogonalityAudit audit;
  };
  std::vector<Row> rows(cfg.q.size());
  parallel_for(cfg.q.size(), [&](std::size_t i) {
    const std::int64_t q = cfg.q[i];
    const auto group = group_for(q, cache);
    Row& row = rows[i];
    row.phi = group->phi();
    row.phi_star = phi_star(q);
    row.count = row.even = row.odd = 0;
    for (const auto& chi : group->primitive_characters()) {
      ++row.count;
      ++(chi.parity() ? row.odd : row.even);
    }
    row.exponent = group->exponent();
    for (const auto& c : group->components()) {
      if (!row.components.empty()) row.components += 'x';
      row.components += std::to_string(c.order);
    }
    std::int64_t sum = 0;
    for (const std::int64_t d : divisors(q)) sum += phi_star(d);
    row.divisor_sum_ok = sum == row.phi;
    row.audit = orthogonality_audit(*group, cfg.m_max);
  });
  const double dev_tol = tol.get("orthogonality.deviation");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& row = rows[i];
    r.table.add({cfg.q[i], row.phi, row.phi_star, row.count, row.even, row.odd, row.exponent, row.components,
                 static_cast<std::int64_t>(row.divisor_sum_ok), row.audit.pairs, row.audit.max_deviation,
                 row.audit.mismatches});
    const std::string at = "q = " + std::to_string(cfg.q[i]) + ": ";
    if (row.phi_star != row.count) r.assert_failures.push_back(at + "phi_star differs from the primitive count");
    if (!row.divisor_sum_ok) r.assert_failures.push_back(at + "sum of phi_star(d) over d | q differs from phi(q)");
    if (row.audit.mismatches != 0 || row.audit.max_deviation >= dev_tol) {
      r.assert_failures.push_back(at + "orthogonality sums do not round to the divisor formula");
    }
  }
  return r;
}

RunResult run_lvalues(const ExperimentConfig& cfg, const ToleranceRegistry& tol, Cache* cache) {
  RunResult r;
  r.table.columns = {"q", "char_index", "parity", "L_re", "L_im", "A_re", "A_im", "dual_relative", "fe_relative"};
  const double dual_tol = tol.get("dual.relative");
  const double fe_tol = tol.get("functional_equation.relative");
  for (const std::int64_t q : cfg.q) {
    check_has_primitive(q);
    const auto group = group_for(q, cache);
    for (const auto& c : lvalue_checks(*group, cfg.tail, cfg.threads)) {
      r.table.add({q, static_cast<std::int64_t>(c.char_index), static_cast<std::int64_t>(c.parity), c.L.real(),
                   c.L.imag(), c.A.real(), c.A.imag(), c.dual_relative, c.fe_relative});
      const std::string at = "q = " + std::to_string(q) + " char " + std::to_string(c.char_index) + ": ";
      if (!(c.dual_relative < dual_tol)) r.assert_failures.push_back(at + "dual residual " + format_double(c.dual_relative));
      if (!(c.fe_relative < fe_tol)) r.assert_failures.push_back(at + "functional equation residual " + format_double(c.fe_relative));
    }
  }
  return r;
}

std::vector<ZeroList> zero_lists(const std::vector<DirichletCharacter>& chars, double T, double step,
                                 Cache* cache, unsigned threads) {
  std::vector<ZeroList> out(chars.size());
  parallel_for(
      chars.size(),
      [&](std::size_t i) { out[i] = cache ? cache->zeros(chars[i], T, step) : find_zeros(chars[i], T, step); },
      threads);
  return out;
}

RunResult run_zeros(const ExperimentConfig& cfg, const ToleranceRegistry&, Cache* cache) {
  RunResult r;
  r.table.columns = {"q", "char_index", "gamma"};
  for (const std::int64_t q : cfg.q) {
    check_has_primitive(q);
    const auto group = group_for(q, cache);
    const auto chars = selected_characters(*group, cfg.chars);
    const auto lists = zero_lists(chars, *cfg.T, cfg.step, cache, cfg.threads);
    for (const auto& z : lists) {
      for (const double g : z.gammas) r.table.add({q, static_cast<std::int64_t>(z.char_index), g});
      if (z.warning) {
        const std::string msg = "q = " + std::to_string(q) + " char " + std::to_string(z.char_index) + ": " + z.status;
        warn(msg);
        r.assert_failures.push_back(msg);
      }
    }
  }
  return r;
}

RunResult run_hybrid(const ExperimentConfig& cfg, const ToleranceRegistry& tol, Cache* cache) {
  RunResult r;
  r.table.columns = {"q",         "char_index", "X",         "L_re",       "L_im",           "P_re",
                     "P_im",      "Zratio_re",  "Zratio_im", "Zzeros_re",  "Zzeros_im",      "gamma_tail",
                     "window_re", "window_im",  "ratio_residual", "residual"};
  const double slack = tol.get("hybrid.trend_slack");
  const double c0 = tol.get("hybrid.envelope.C");
  const double c1 = tol.get("hybrid.envelope.Cprime");
  std::vector<double> xs = cfg.X;
  std::sort(xs.begin(), xs.end());
  for (const std::int64_t q : cfg.q) {
    check_has_primitive(q);
    for (const double X : xs) regime_note(q, X);
    const auto group = group_for(q, cache);
    const auto chars = selected_characters(*group, cfg.chars);
    const HurwitzTable central(*group, 0.5);
    std::vector<ZeroList> zeros;
    if (cfg.T) zeros = zero_lists(chars, *cfg.T, 0.0, cache, cfg.threads);
    std::vector<std::unique_ptr<HybridContext>> ctx;
    for (const double X : xs) ctx.push_back(std::make_unique<HybridContext>(q, X));
    // values[c * xs.size() + j]
    std::vector<HybridValue> values(chars.size() * xs.size());
    std::vector<std::string> errors(chars.size());
    parallel_for(
        chars.size(),
        [&](std::size_t c) {
          const cplx L = l_value(chars[c], central);
          if (std::abs(L) <= 1e-12) {
            errors[c] = "central value below 1e-12, skipped";
            return;
          }
          for (std::size_t j = 0; j < xs.size(); ++j) {
            HybridValue v = z_x_from_ratio(chars[c], *ctx[j], L);
            if (cfg.T) {
              v.Z_X_zeros = z_x_from_zeros(ctx[j]->bump(), zeros[c]);
              v.residual = std::abs(L / (v.P_X * *v.Z_X_zeros) - 1.0);
            }
            values[c * xs.size() + j] = v;
          }
        },
        cfg.threads);
    for (std::size_t c = 0; c < chars.size(); ++c) {
      const auto idx = static_cast<std::int64_t>(chars[c].index());
      const std::string at = "q = " + std::to_string(q) + " char " + std::to_string(idx) + ": ";
      if (!errors[c].empty()) {
        warn(at + errors[c]);
        continue;
      }
      for (std::size_t j = 0; j < xs.size(); ++j) {
        const HybridValue& v = values[c * xs.size() + j];
        const Cell zr = v.Z_X_zeros ? Cell(v.Z_X_zeros->real()) : Cell();
        const Cell zi = v.Z_X_zeros ? Cell(v.Z_X_zeros->imag()) : Cell();
        r.table.add({q, idx, xs[j], v.L.real(), v.L.imag(), v.P_X.real(), v.P_X.imag(), v.Z_X_ratio.real(),
                     v.Z_X_ratio.imag(), zr, zi, v.gamma_tail, v.window.real(), v.window.imag(),
                     v.ratio_residual(), v.residual});
        const double lx = std::log(xs[j]);
        const double envelope = c0 / (lx * lx) + c1 * lx / std::sqrt(xs[j]);
        if (!(v.ratio_residual() <= envelope)) {
          r.assert_failures.push_back(at + "ratio residual above the envelope at X = " + format_double(xs[j]));
        }
        if (!std::isfinite(v.residual)) r.assert_failures.push_back(at + "residual is not finite");
        if (j > 0 && cfg.T && v.residual > (1.0 + slack) * values[c * xs.size() + j - 1].residual) {
          r.assert_failures.push_back(at + "residual increases from X = " + format_double(xs[j - 1]) +
                                      " to X = " + format_double(xs[j]));
        }
      }
    }
  }
  return r;
}

// Band key for a (kind, k, label) row, if the registry has one.
std::optional<std::string> moment_band(MomentKind which, double k, const std::string& label) {
  if (which == MomentKind::kL && k == 1 && label == "second_moment") return "moment.L.k1";
  if (which == MomentKind::kL && k == 2 && label == "fourth_moment") return "moment.L.k2";
  if (which == MomentKind::kP && k == 1 && label == "euler_restricted") return "moment.P.k1";
  if (which == MomentKind::kP && k == 2 && label == "euler_restricted") return "moment.P.k2";
  if ((which == MomentKind::kZRatio || which == MomentKind::kZZeros) && k == 1 && label == "hadamard") {
    return "moment.Z.k1";
  }
  if ((which == MomentKind::kZRatio || which == MomentKind::kZZeros) && k == 2 && label == "hadamard") {
    return "moment.Z.k2";
  }
  return std::nullopt;
}

RunResult run_moment(const ExperimentConfig& cfg, const ToleranceRegistry& tol, Cache* cache) {
  RunResult r;
  r.table.columns = {"q", "k", "X", "which", "empirical", "prediction_label", "prediction", "ratio", "excluded", "seconds"};
  const MomentKind which = parse_moment_kind(cfg.which);
  std::vector<std::optional<double>> xs;
  if (which == MomentKind::kL) {
    xs.push_back(std::nullopt);
  } else {
    for (const double X : cfg.X) xs.emplace_back(X);
  }
  for (const std::int64_t q : cfg.q) {
    check_has_primitive(q);
    for (const auto& X : xs) {
      if (X) regime_note(q, *X);
      MomentOptions opts;
      opts.X = X;
      opts.zero_height = cfg.T;
      opts.threads = cfg.threads;
      opts.cache = cache;
      // One sweep per (q, X) serves every k.
      CharacterSweep sweep;
      if (which != MomentKind::kPZSplit) sweep = sweep_characters(q, which, opts);
      for (const double k : cfg.k) {
        MomentReport rep;
        if (which == MomentKind::kPZSplit) {
          rep = splitting_check(q, k, *X, opts);
        } else {
          rep = moment_from_sweep(sweep, q, k, which, opts);
        }
        const std::string kind(moment_kind_name(which));
        auto add = [&](Cell label, Cell value, Cell ratio) {
          r.table.add({q, k, opt_cell(X), kind, rep.empirical, label, value, ratio,
                       static_cast<std::int64_t>(rep.excluded), rep.seconds});
        };
        if (rep.predictions.empty()) add({}, {}, {});
        for (const auto& p : rep.predictions) {
          add(p.label, p.value, p.ratio);
          if (const auto band = moment_band(which, k, p.label); band && !tol.in_band(*band, p.ratio)) {
            const auto [lo, hi] = tol.band(*band);
            r.assert_failures.push_back("q = " + std::to_string(q) + " k = " + format_double(k) + " " + kind +
                                        " " + p.label + ": ratio " + format_double(p.ratio) + " outside [" +
                                        format_double(lo) + ", " + format_double(hi) + "]");
          }
        }
      }
    }
  }
  return r;
}

RunResult run_rmt(const ExperimentConfig& cfg, const ToleranceRegistry& tol, Cache*) {
  RunResult r;
  r.table.columns = {"N", "k", "samples", "seed", "mc_mean", "mc_stderr", "exact", "asymptotic", "z_score", "seconds"};
  const double limit = tol.get("cue.stderr_units");
  for (const std::int64_t N : cfg.N) {
    for (const double k : cfg.k) {
      const auto res = cue_moment_mc(static_cast<int>(N), k, static_cast<std::uint64_t>(*cfg.samples), *cfg.seed,
                                     cfg.threads);
      std::optional<double> z;
      if (res.exact) z = (res.mc_mean - *res.exact) / res.mc_stderr;
      r.table.add({N, k, *cfg.samples, static_cast<std::int64_t>(*cfg.seed), res.mc_mean, res.mc_stderr, opt_cell(res.exact),
                   opt_cell(res.asymptotic), opt_cell(z), res.seconds});
      if (z && !(std::abs(*z) <= limit)) {
        r.assert_failures.push_back("N = " + std::to_string(N) + " k = " + format_double(k) + ": " +
                                    format_double(*z) + " standard errors from the exact value");
      }
    }
  }
  return r;
}

RunResult run_predict(const ExperimentConfig& cfg, const ToleranceRegistry& tol, Cache*) {
  RunResult r;
  r.table.columns = {"q", "k", "X", "label", "value"};
  const double lz = tol.get("barnes.a2_product");
  for (const std::int64_t q : cfg.q) {
    const double lq = std::log(static_cast<double>(q));
    for (const double kd : cfg.k) {
      const int k = static_cast<int>(kd);
      auto add = [&](Cell X, const std::string& label, double v) { r.table.add({q, kd, X, label, v}); };
      const double g = barnes_ratio(k);
      const double a = arithmetic_factor_a(kd);
      add({}, "barnes_ratio", g);
      add({}, "a_k", a);
      add({}, "a_k_barnes_ratio", a * g);
      if (k >= 1 && k <= 4) add({}, "moment_conjecture", predicted_moment_L(q, k));
      if (k == 1) add({}, "second_moment", static_cast<double>(euler_phi(q)) / static_cast<double>(q) * lq);
      if (k == 2) {
        double local = 1.0;
        for (const auto& [p, e] : factorize(q)) {
          const double ip = 1.0 / static_cast<double>(p);
          local *= std::pow(1.0 - ip, 3) / (1.0 + ip);
        }
        add({}, "fourth_moment", local * std::pow(lq, 4) / (2.0 * std::numbers::pi * std::numbers::pi));
        if (!(std::abs(a * g - 1.0 / (2.0 * std::numbers::pi * std::numbers::pi)) < lz)) {
          r.assert_failures.push_back("a(2) G(3)^2/G(5) differs from 1/(2 pi^2)");
        }
      }
      for (const double X : cfg.X) {
        regime_note(q, X);
        const PPrediction p = predicted_moment_P(q, kd, X);
        add(X, "euler_restricted", p.restricted);
        add(X, "euler_full", p.full);
        const ZPrediction z = predicted_moment_Z(q, k, X);
        if (z.theorem) add(X, "hadamard", *z.theorem);
        add(X, "cue_leading", z.conjecture);
      }
    }
  }
  return r;
}

}  // namespace

ExperimentConfig build_config(const FlatConfig& merged) {
  ExperimentConfig cfg;
  if (!merged.has("command")) throw ConfigError("command: missing (give a subcommand or 'command = ...')");
  cfg.command = single(merged, "command");
  const auto cmd = kCommandKeys.find(cfg.command);
  if (cmd == kCommandKeys.end()) throw ConfigError("command: unknown command '" + cfg.command + "'");
  for (const auto& [key, items] : merged.values) {
    if (kCommon.count(key) == 0 && cmd->second.count(key) == 0) {
      throw ConfigError(key + ": not a setting of '" + cfg.command + "'");
    }
  }
  for (const auto& key : kRequired.at(cfg.command)) {
    if (!merged.has(key)) throw ConfigError(key + ": required by '" + cfg.command + "'");
  }

  if (merged.has("q")) cfg.q = int_list(merged, "q", 1, 1'000'000);
  if (merged.has("k")) cfg.k = real_list(merged, "k", -4.0, 8.0);
  if (merged.has("X")) cfg.X = real_list(merged, "X", 2.0, 1e6);
  if (merged.has("T")) cfg.T = parse_real(single(merged, "T"), "T");
  if (merged.has("N")) cfg.N = int_list(merged, "N", 1, 256);
  if (merged.has("samples")) cfg.samples = int_list(merged, "samples", 1000, 1'000'000'000).at(0);
  if (merged.has("seed")) {
    cfg.seed = static_cast<std::uint64_t>(int_list(merged, "seed", 0, INT64_MAX).at(0));
  }
  if (merged.has("which")) cfg.which = single(merged, "which");
  if (merged.has("chars")) cfg.chars = int_list(merged, "chars", 0, 1'000'000);
  if (merged.has("tail")) cfg.tail = real_list(merged, "tail", 1.0, 1000.0).at(0);
  if (merged.has("step")) cfg.step = real_list(merged, "step", 0.0, 1.0).at(0);
  if (merged.has("m_max")) cfg.m_max = int_list(merged, "m_max", 1, 1000).at(0);
  if (merged.has("tolerances")) cfg.tolerances = single(merged, "tolerances");
  if (merged.has("cache_dir")) cfg.cache_dir = single(merged, "cache_dir");
  if (merged.has("out")) cfg.out = single(merged, "out");
  if (merged.has("threads")) cfg.threads = static_cast<unsigned>(int_list(merged, "threads", 0, 1024).at(0));
  if (merged.has("kernel")) cfg.kernel = single(merged, "kernel");
  if (merged.has("format")) {
    const std::string f = single(merged, "format");
    if (f == "csv") {
      cfg.format = Format::kCsv;
    } else if (f == "json") {
      cfg.format = Format::kJson;
    } else {
      throw ConfigError("format: expected csv or json, got '" + f + "'");
    }
  }
  if (merged.has("assert")) cfg.assert_mode = parse_bool(single(merged, "assert"), "assert");

  if (cfg.T && !(*cfg.T > 0.0 && *cfg.T <= 10000.0)) throw ConfigError("T: must lie in (0, 10000]");
  if (cfg.kernel != "auto" && cfg.kernel != "scalar" && cfg.kernel != "avx2" && cfg.kernel != "neon") {
    throw ConfigError("kernel: expected auto, scalar, avx2 or neon, got '" + cfg.kernel + "'");
  }
  if (cfg.command == "moment") {
    MomentKind which;
    try {
      which = parse_moment_kind(cfg.which);
    } catch (const std::exception&) {
      throw ConfigError("which: unknown moment kind '" + cfg.which + "'");
    }
    if (which != MomentKind::kL && cfg.X.empty()) throw ConfigError("X: required for which = " + cfg.which);
    if (which == MomentKind::kZZeros && !cfg.T) throw ConfigError("T: required for which = Z_zeros");
    for (std::size_t i = 0; i < cfg.k.size(); ++i) {
      if (!(cfg.k[i] > 0.0)) throw ConfigError(field("k", i, cfg.k.size()) + ": must be positive");
    }
    for (std::size_t i = 0; i < cfg.q.size(); ++i) {
      if (cfg.q[i] < 3) throw ConfigError(field("q", i, cfg.q.size()) + ": must be >= 3");
    }
  }
  if (cfg.command == "predict") {
    for (std::size_t i = 0; i < cfg.k.size(); ++i) {
      if (cfg.k[i] != std::floor(cfg.k[i]) || cfg.k[i] < 1) {
        throw ConfigError(field("k", i, cfg.k.size()) + ": predictions need an integer k >= 1");
      }
    }
    for (std::size_t i = 0; i < cfg.q.size(); ++i) {
      if (cfg.q[i] < 2) throw ConfigError(field("q", i, cfg.q.size()) + ": must be >= 2");
    }
  }
  if (cfg.command == "rmt") {
    for (std::size_t i = 0; i < cfg.k.size(); ++i) {
      if (!(cfg.k[i] >= 0.0)) throw ConfigError(field("k", i, cfg.k.size()) + ": must be >= 0");
    }
  }
  if (cfg.command == "lvalues" || cfg.command == "zeros" || cfg.command == "hybrid") {
    for (std::size_t i = 0; i < cfg.q.size(); ++i) {
      if (cfg.q[i] < 3) throw ConfigError(field("q", i, cfg.q.size()) + ": must be >= 3");
    }
  }
  return cfg;
}

std::string config_hash(const ExperimentConfig& cfg) {
  std::ostringstream s;
  auto list = [&](const char* key, const auto& v, auto fmt) {
    s << key << '=';
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << fmt(v[i]);
    s << ';';
  };
  auto as_int = [](std::int64_t v) { return std::to_string(v); };
  auto as_real = [](double v) { return format_double(v); };
  s << "version=" << library_version() << ";kernel=" << kernels::isa_name(kernels::active_isa())
    << ";command=" << cfg.command << ";format=" << (cfg.format == Format::kCsv ? "csv" : "json") << ';';
  list("q", cfg.q, as_int);
  list("k", cfg.k, as_real);
  list("X", cfg.X, as_real);
  list("N", cfg.N, as_int);
  list("chars", cfg.chars, as_int);
  s << "T=" << (cfg.T ? format_double(*cfg.T) : "") << ";samples=" << (cfg.samples ? std::to_string(*cfg.samples) : "")
    << ";seed=" << (cfg.seed ? std::to_string(*cfg.seed) : "") << ";which=" << cfg.which
    << ";tail=" << format_double(cfg.tail) << ";step=" << format_double(cfg.step) << ";m_max=" << cfg.m_max;
  return hex64(fnv1a64(s.str()));
}

RunResult run_experiment(const ExperimentConfig& cfg) {
  const ToleranceRegistry tol = cfg.tolerances.empty() ? ToleranceRegistry::defaults()
                                                       : ToleranceRegistry::load(cfg.tolerances);
  const auto cache = open_cache(cfg);
  using Runner = RunResult (*)(const ExperimentConfig&, const ToleranceRegistry&, Cache*);
  static const std::map<std::string, Runner> runners = {
      {"chars", run_chars},   {"lvalues", run_lvalues}, {"zeros", run_zeros},     {"hybrid", run_hybrid},
      {"moment", run_moment}, {"rmt", run_rmt},         {"predict", run_predict},
  };
  return runners.at(cfg.command)(cfg, tol, cache.get());
}

}  // namespace lhybrid::cli

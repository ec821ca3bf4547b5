// lhybrid: experiment runner. See README.md for the subcommands and
// docs/schemas.md for the output columns.

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "experiment.hpp"
#include "lhybrid/arith.hpp"
#include "lhybrid/kernels.hpp"
#include "lhybrid/parallel.hpp"
#include "lhybrid/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitAssert = 2;
constexpr int kExitInternal = 3;

lhybrid::kernels::Isa parse_isa(const std::string& name) {
  using lhybrid::kernels::Isa;
  if (name == "scalar") return Isa::kScalar;
  if (name == "avx2") return Isa::kAvx2;
  if (name == "neon") return Isa::kNeon;
  return lhybrid::kernels::detect_isa();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace lhybrid;
  CLI::App app{"Hybrid Euler-Hadamard product experiments for Dirichlet L-functions"};
  app.set_version_flag("--version", std::string(library_version()));
  app.require_subcommand(0, 1);

  std::string config_path;
  std::map<std::string, std::vector<std::string>> flags;
  bool assert_flag = false;
  app.add_option("--config", config_path, "flat key = value config file")->check(CLI::ExistingFile);

  auto add_list = [&](CLI::App* target, const std::string& key, const std::string& help) {
    target->add_option("--" + key, flags[key], help)->delimiter(',');
  };
  auto add_value = [&](CLI::App* target, const std::string& key, const std::string& help) {
    target->add_option("--" + key, flags[key], help)->expected(1);
  };
  add_value(&app, "threads", "worker threads (0 = all cores)");
  add_value(&app, "kernel", "auto, scalar, avx2 or neon");
  add_value(&app, "format", "csv or json");
  add_value(&app, "out", "output file (default stdout)");
  add_value(&app, "tolerances", "tolerance registry file");
  add_value(&app, "cache-dir", "cache directory (overrides LHYBRID_CACHE_DIR)");
  app.add_flag("--assert", assert_flag, "exit 2 when a registered tolerance fails");

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"chars", "character groups, phi*, orthogonality audit"},
      {"lvalues", "L(1/2, chi) with dual-method and functional-equation residuals"},
      {"zeros", "zeros on the critical line up to height T"},
      {"hybrid", "P_X, Z_X and residuals per character"},
      {"moment", "empirical moments against their predictions"},
      {"rmt", "CUE characteristic polynomial moments"},
      {"predict", "closed-form predictions only"},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    subs[name] = sub;
  }
  for (const char* name : {"chars", "lvalues", "zeros", "hybrid", "moment", "predict"}) {
    add_list(subs[name], "q", "moduli");
  }
  for (const char* name : {"moment", "rmt", "predict"}) add_list(subs[name], "k", "moment exponents");
  for (const char* name : {"hybrid", "moment", "predict"}) add_list(subs[name], "X", "Euler product lengths");
  for (const char* name : {"zeros", "hybrid", "moment"}) add_value(subs[name], "T", "zero height");
  for (const char* name : {"zeros", "hybrid"}) add_list(subs[name], "chars", "character indices (default: all primitive)");
  add_value(subs["chars"], "m-max", "orthogonality audit range");
  add_value(subs["lvalues"], "tail", "quadratic form cutoff as a multiple of q");
  add_value(subs["zeros"], "step", "scan step (0 = automatic)");
  add_value(subs["moment"], "which", "L, P, Z_ratio, Z_zeros or PZ-split");
  add_list(subs["rmt"], "N", "matrix sizes");
  add_value(subs["rmt"], "samples", "Monte Carlo samples");
  add_value(subs["rmt"], "seed", "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    FlatConfig merged;
    if (!config_path.empty()) merged = load_flat_config(config_path);
    for (const auto& [name, sub] : subs) {
      if (sub->parsed()) merged.values["command"] = {name};
    }
    for (const auto& [key, values] : flags) {
      if (values.empty()) continue;
      std::string k = key;
      for (char& c : k) {
        if (c == '-') c = '_';
      }
      merged.values[k] = values;
    }
    if (assert_flag) merged.values["assert"] = {"true"};

    const cli::ExperimentConfig cfg = cli::build_config(merged);
    if (cfg.kernel != "auto") {
      const auto isa = parse_isa(cfg.kernel);
      if (!kernels::isa_available(isa)) throw ConfigError("kernel: " + cfg.kernel + " is not available on this machine");
      kernels::set_active_isa(isa);
    }
    if (cfg.threads > 0) set_default_threads(cfg.threads);

    const cli::RunResult result = cli::run_experiment(cfg);
    const cli::RunHeader header{cfg.command, cli::config_hash(cfg)};
    if (cfg.out.empty()) {
      cli::write_table(std::cout, result.table, cfg.format, header);
    } else {
      std::ofstream out(cfg.out);
      if (!out) throw ConfigError("out: cannot open '" + cfg.out + "' for writing");
      cli::write_table(out, result.table, cfg.format, header);
    }
    if (cfg.assert_mode && !result.assert_failures.empty()) {
      for (const auto& f : result.assert_failures) std::cerr << "assert: " << f << '\n';
      return kExitAssert;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

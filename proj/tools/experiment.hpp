#pragma once
// Experiment configuration and the subcommands that run it.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lhybrid/config.hpp"
#include "table.hpp"

namespace lhybrid::cli {

struct ExperimentConfig {
  std::string command;
  std::vector<std::int64_t> q;
  std::vector<double> k;
  std::vector<double> X;
  std::optional<double> T;
  std::vector<std::int64_t> N;
  std::optional<std::int64_t> samples;
  std::optional<std::uint64_t> seed;
  std::string which = "L";
  std::vector<std::int64_t> chars;  // character indices; empty = all primitive
  double tail = 30.0;
  double step = 0.0;
  std::int64_t m_max = 50;
  std::string tolerances;
  std::string cache_dir;
  std::string out;
  unsigned threads = 0;
  std::string kernel = "auto";
  Format format = Format::kCsv;
  bool assert_mode = false;
};

/// Schema check: known keys, keys valid for the command, element types,
/// required keys. Errors name the offending field, e.g. "q[2]".
ExperimentConfig build_config(const FlatConfig& merged);

/// Hash of everything that can change the numeric payload: command, inputs,
/// output format, active kernel ISA and library version. Thread count, paths
/// and assert mode are left out.
std::string config_hash(const ExperimentConfig& cfg);

struct RunResult {
  Table table;
  std::vector<std::string> assert_failures;
};

RunResult run_experiment(const ExperimentConfig& cfg);

}  // namespace lhybrid::cli

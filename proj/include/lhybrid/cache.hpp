#pragma once
// On-disk cache for character groups, zero lists and coefficient tables.
//
// Entries are keyed by an FNV-1a hash of their defining parameters and carry a
// trailing checksum. Writes go to a temporary file and are renamed into place
// under an exclusive advisory lock on <dir>/.lock. An entry that fails to load
// is rebuilt and rewritten, and the warning sink is told about it. Safe to use
// from several threads as long as the sink is.

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "lhybrid/chars.hpp"
#include "lhybrid/hybrid.hpp"
#include "lhybrid/lfunc.hpp"

namespace lhybrid {

class Cache {
 public:
  using WarningSink = std::function<void(const std::string&)>;

  /// Creates the directory if needed. The default sink writes to stderr.
  explicit Cache(std::filesystem::path dir, WarningSink sink = {});

  /// $LHYBRID_CACHE_DIR when set and non-empty.
  static std::optional<std::filesystem::path> env_dir();

  const std::filesystem::path& dir() const { return dir_; }

  std::shared_ptr<const CharacterGroup> character_group(std::int64_t q);
  /// Zeros of a primitive character up to height T (step as in find_zeros).
  ZeroList zeros(const DirichletCharacter& chi, double T, double step = 0.0);
  CoefficientTable coefficients(double k, double X, std::int64_t n_max,
                                CoefficientVariant variant = CoefficientVariant::kAlpha);

  /// Entries served from disk / rebuilt since construction.
  std::size_t hits() const { return hits_; }
  std::size_t rebuilds() const { return rebuilds_; }

  /// Path for a key, exposed so tests can corrupt entries deliberately.
  std::filesystem::path entry_path(const std::string& kind, const std::string& key) const;
  static std::string group_key(std::int64_t q);
  static std::string zeros_key(std::int64_t q, std::size_t char_index, double T, double step);
  static std::string coefficient_key(double k, double X, std::int64_t n_max, CoefficientVariant variant);

 private:
  std::optional<std::string> load(const std::filesystem::path& path);
  void store(const std::filesystem::path& path, const std::string& payload);
  void warn(const std::string& message);

  std::filesystem::path dir_;
  WarningSink sink_;
  std::atomic<std::size_t> hits_ = 0;
  std::atomic<std::size_t> rebuilds_ = 0;
};

/// Binary layout: "LHCT", u32 version, f64 k, f64 X, i64 n_max, u8 variant,
/// u64 count, then count (i64 n, f64 value) pairs over the support.
std::string serialize_coefficients(const CoefficientTable& table);
CoefficientTable deserialize_coefficients(const std::string& bytes);

}  // namespace lhybrid

#include "lhybrid/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "lhybrid/report.hpp"

namespace lhybrid {
namespace {

constexpr std::uint32_t kFormatVersion = 1;

class FileLock {
 public:
  FileLock(const std::filesystem::path& path, bool exclusive) {
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
    if (fd_ >= 0 && ::flock(fd_, exclusive ? LOCK_EX : LOCK_SH) != 0) {
      ::close(fd_);
      fd_ = -1;
    }
  }
  ~FileLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

template <class T>
void put(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

template <class T>
T take(const std::string& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) throw std::runtime_error("truncated entry");
  T v;
  std::memcpy(&v, in.data() + pos, sizeof(T));
  pos += sizeof(T);
  return v;
}

std::string key_double(double v) { return format_double(v); }

}  // namespace

std::string serialize_coefficients(const CoefficientTable& table) {
  std::string out = "LHCT";
  put<std::uint32_t>(out, kFormatVersion);
  put<double>(out, table.k);
  put<double>(out, table.X);
  put<std::int64_t>(out, table.n_max);
  put<std::uint8_t>(out, table.variant == CoefficientVariant::kAlpha ? 0 : 1);
  put<std::uint64_t>(out, table.support.size());
  for (const std::int64_t n : table.support) {
    put<std::int64_t>(out, n);
    put<double>(out, table.values[n]);
  }
  return out;
}

CoefficientTable deserialize_coefficients(const std::string& bytes) {
  if (bytes.compare(0, 4, "LHCT") != 0) throw std::runtime_error("coefficient table: bad magic");
  std::size_t pos = 4;
  if (take<std::uint32_t>(bytes, pos) != kFormatVersion) {
    throw std::runtime_error("coefficient table: unknown version");
  }
  CoefficientTable t;
  t.k = take<double>(bytes, pos);
  t.X = take<double>(bytes, pos);
  t.n_max = take<std::int64_t>(bytes, pos);
  const auto variant = take<std::uint8_t>(bytes, pos);
  if (variant > 1 || t.n_max < 1 || t.n_max > 100'000'000) {
    throw std::runtime_error("coefficient table: bad header");
  }
  t.variant = variant == 0 ? CoefficientVariant::kAlpha : CoefficientVariant::kBetaMinus2;
  const auto count = take<std::uint64_t>(bytes, pos);
  if (count > static_cast<std::uint64_t>(t.n_max)) throw std::runtime_error("coefficient table: bad count");
  t.values.assign(static_cast<std::size_t>(t.n_max) + 1, 0.0);
  t.support.reserve(count);
  std::int64_t prev = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto n = take<std::int64_t>(bytes, pos);
    if (n <= prev || n > t.n_max) throw std::runtime_error("coefficient table: support out of order");
    prev = n;
    t.support.push_back(n);
    t.values[n] = take<double>(bytes, pos);
  }
  if (pos != bytes.size()) throw std::runtime_error("coefficient table: trailing bytes");
  return t;
}

Cache::Cache(std::filesystem::path dir, WarningSink sink) : dir_(std::move(dir)), sink_(std::move(sink)) {
  std::filesystem::create_directories(dir_);
  if (!sink_) sink_ = [](const std::string& m) { std::cerr << "warning: " << m << '\n'; };
}

std::optional<std::filesystem::path> Cache::env_dir() {
  const char* env = std::getenv("LHYBRID_CACHE_DIR");
  if (env == nullptr || *env == '\0') return std::nullopt;
  return std::filesystem::path(env);
}

std::string Cache::group_key(std::int64_t q) { return "chars|q=" + std::to_string(q); }

std::string Cache::zeros_key(std::int64_t q, std::size_t char_index, double T, double step) {
  return "zeros|q=" + std::to_string(q) + "|char=" + std::to_string(char_index) + "|T=" + key_double(T) +
         "|step=" + key_double(step);
}

std::string Cache::coefficient_key(double k, double X, std::int64_t n_max, CoefficientVariant variant) {
  return "coef|k=" + key_double(k) + "|X=" + key_double(X) + "|n_max=" + std::to_string(n_max) +
         "|variant=" + (variant == CoefficientVariant::kAlpha ? "alpha" : "beta-2");
}

std::filesystem::path Cache::entry_path(const std::string& kind, const std::string& key) const {
  return dir_ / (kind + "-" + hex64(fnv1a64("v" + std::to_string(kFormatVersion) + "|" + key)) + ".bin");
}

void Cache::warn(const std::string& message) { sink_(message); }

// Returns the payload, or nullopt when the file is missing. Throws on a bad
// checksum so the caller can rebuild.
std::optional<std::string> Cache::load(const std::filesystem::path& path) {
  FileLock lock(dir_ / ".lock", false);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() < 8) throw std::runtime_error("entry shorter than its checksum");
  std::uint64_t stored;
  std::memcpy(&stored, bytes.data() + bytes.size() - 8, 8);
  bytes.resize(bytes.size() - 8);
  if (fnv1a64(bytes) != stored) throw std::runtime_error("checksum mismatch");
  return bytes;
}

void Cache::store(const std::filesystem::path& path, const std::string& payload) {
  FileLock lock(dir_ / ".lock", true);
  auto tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    const std::uint64_t sum = fnv1a64(payload);
    out.write(reinterpret_cast<const char*>(&sum), 8);
    if (!out) {
      std::filesystem::remove(tmp);
      warn("cache: could not write " + path.string());
      return;
    }
  }
  std::filesystem::rename(tmp, path);
}

std::shared_ptr<const CharacterGroup> Cache::character_group(std::int64_t q) {
  const auto path = entry_path("chars", group_key(q));
  try {
    if (auto bytes = load(path)) {
      std::istringstream in(*bytes);
      auto group = CharacterGroup::deserialize(in);
      if (group->modulus() != q) throw std::runtime_error("modulus mismatch");
      ++hits_;
      return group;
    }
  } catch (const std::exception& e) {
    warn("cache: corrupted character table for q=" + std::to_string(q) + " (" + e.what() + "), rebuilding");
  }
  auto group = CharacterGroup::create(q);
  std::ostringstream out;
  group->serialize(out);
  store(path, out.str());
  ++rebuilds_;
  return group;
}

ZeroList Cache::zeros(const DirichletCharacter& chi, double T, double step) {
  const auto path = entry_path("zeros", zeros_key(chi.modulus(), chi.index(), T, step));
  try {
    if (auto bytes = load(path)) {
      std::istringstream in(*bytes);
      std::string meta;
      std::getline(in, meta);
      std::istringstream m(meta);
      std::string hash_mark, status;
      double height, used_step, expected;
      int warning;
      std::size_t count;
      if (!(m >> hash_mark >> height >> used_step >> expected >> warning >> count) || hash_mark != "#") {
        throw std::runtime_error("bad metadata line");
      }
      std::getline(m >> std::ws, status);
      ZeroList z = read_zero_csv(in);
      if (z.gammas.size() != count) throw std::runtime_error("row count mismatch");
      z.q = chi.modulus();
      z.char_index = chi.index();
      z.height = height;
      z.step = used_step;
      z.expected_count = expected;
      z.warning = warning != 0;
      z.status = status;
      ++hits_;
      return z;
    }
  } catch (const std::exception& e) {
    warn("cache: corrupted zero list for q=" + std::to_string(chi.modulus()) + " char=" +
         std::to_string(chi.index()) + " (" + e.what() + "), rebuilding");
  }
  ZeroList z = find_zeros(chi, T, step);
  std::ostringstream out;
  out << "# " << format_double(z.height) << ' ' << format_double(z.step) << ' '
      << format_double(z.expected_count) << ' ' << (z.warning ? 1 : 0) << ' ' << z.gammas.size() << ' '
      << (z.status.empty() ? "ok" : z.status) << '\n';
  write_zero_csv(out, z);
  store(path, out.str());
  ++rebuilds_;
  return z;
}

CoefficientTable Cache::coefficients(double k, double X, std::int64_t n_max, CoefficientVariant variant) {
  const auto path = entry_path("coef", coefficient_key(k, X, n_max, variant));
  try {
    if (auto bytes = load(path)) {
      CoefficientTable t = deserialize_coefficients(*bytes);
      if (t.k != k || t.X != X || t.n_max != n_max || t.variant != variant) {
        throw std::runtime_error("parameter mismatch");
      }
      ++hits_;
      return t;
    }
  } catch (const std::exception& e) {
    warn(std::string("cache: corrupted coefficient table (") + e.what() + "), rebuilding");
  }
  CoefficientTable t = coefficient_table(k, X, n_max, variant);
  store(path, serialize_coefficients(t));
  ++rebuilds_;
  return t;
}

}  // namespace lhybrid

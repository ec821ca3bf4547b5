#include "lhybrid/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace lhybrid {

std::string_view library_version() { return LHYBRID_VERSION; }

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_output_header(std::ostream& out, std::string_view command, std::string_view config_hash) {
  out << "# lhybrid " << library_version() << " command=" << command << " config_hash=" << config_hash
      << '\n';
}

}  // namespace lhybrid

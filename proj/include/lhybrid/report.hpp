#pragma once
// Output helpers shared by the library writers and the CLI.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace lhybrid {

std::string_view library_version();

/// Shortest round-trip decimal form ("%.17g", with nan/inf spelled out).
std::string format_double(double v);

/// 64-bit FNV-1a, as 16 hex digits.
std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t v);

/// "# lhybrid <version> command=<cmd> config_hash=<hash>"
void write_output_header(std::ostream& out, std::string_view command, std::string_view config_hash);

}  // namespace lhybrid

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "lhybrid/kernels.hpp"

namespace lhybrid::kernels {
namespace {

// cos/sin of 2 pi k / M with the angle folded into [0, pi/4] first, so values at
// multiples of pi/4 come out exactly symmetric (and exactly 0, +-1 at quarters).
std::complex<double> exact_root(std::int64_t k, std::int64_t m) {
  k %= m;
  if (k < 0) k += m;
  // Work in units of M/8: 8k = q*M + r with 0 <= r < M.
  const std::int64_t num = 8 * k;
  const std::int64_t octant = num / m;
  const std::int64_t rem = num % m;
  const double pi4 = std::numbers::pi / 4.0;
  auto angle = [&](std::int64_t r) { return pi4 * static_cast<double>(r) / static_cast<double>(m); };
  double c = 0.0;
  double s = 0.0;
  // Within each octant use the angle measured from the nearest multiple of pi/4
  // that keeps it in [0, pi/4].
  const bool even = (octant % 2) == 0;
  const double a = even ? angle(rem) : angle(m - rem);
  const double ca = std::cos(a);
  const double sa = std::sin(a);
  switch (octant) {
    case 0: c = ca; s = sa; break;
    case 1: c = sa; s = ca; break;
    case 2: c = -sa; s = ca; break;
    case 3: c = -ca; s = sa; break;
    case 4: c = -ca; s = -sa; break;
    case 5: c = -sa; s = -ca; break;
    case 6: c = sa; s = -ca; break;
    default: c = ca; s = -sa; break;
  }
  return {c, s};
}

std::atomic<Isa>& active_slot() {
  static std::atomic<Isa> slot{detect_isa()};
  return slot;
}

}  // namespace

RootTable::RootTable(std::int32_t order) : order_(order) {
  if (order < 1) throw std::invalid_argument("RootTable: order must be >= 1");
  cos_.resize(order);
  sin_.resize(order);
  for (std::int32_t k = 0; k < order; ++k) {
    const auto z = exact_root(k, order);
    cos_[k] = z.real();
    sin_[k] = z.imag();
  }
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
    default: return "scalar";
  }
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return true;
    case Isa::kAvx2:
#if defined(LHYBRID_HAS_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa detect_isa() {
  if (isa_available(Isa::kAvx2)) return Isa::kAvx2;
  if (isa_available(Isa::kNeon)) return Isa::kNeon;
  return Isa::kScalar;
}

Isa active_isa() { return active_slot().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument("kernel variant '" + std::string(isa_name(isa)) +
                                "' is not available on this machine");
  }
  active_slot().store(isa, std::memory_order_relaxed);
}

std::complex<double> phase_dot(std::span<const double> weights,
                               std::span<const std::int32_t> phases, const RootTable& roots) {
  if (weights.size() != phases.size()) throw std::invalid_argument("phase_dot: size mismatch");
  const double* c = roots.cos_data();
  const double* s = roots.sin_data();
  switch (active_isa()) {
#if defined(LHYBRID_HAS_AVX2)
    case Isa::kAvx2: return avx2::phase_dot(weights.data(), phases.data(), weights.size(), c, s);
#endif
#if defined(__aarch64__)
    case Isa::kNeon: return neon::phase_dot(weights.data(), phases.data(), weights.size(), c, s);
#endif
    default: return scalar::phase_dot(weights.data(), phases.data(), weights.size(), c, s);
  }
}

std::complex<double> phase_dot_complex(std::span<const double> weights_re,
                                       std::span<const double> weights_im,
                                       std::span<const std::int32_t> phases,
                                       const RootTable& roots) {
  if (weights_re.size() != phases.size() || weights_im.size() != phases.size()) {
    throw std::invalid_argument("phase_dot_complex: size mismatch");
  }
  const double* c = roots.cos_data();
  const double* s = roots.sin_data();
  const std::size_t n = phases.size();
  switch (active_isa()) {
#if defined(LHYBRID_HAS_AVX2)
    case Isa::kAvx2:
      return avx2::phase_dot_complex(weights_re.data(), weights_im.data(), phases.data(), n, c, s);
#endif
#if defined(__aarch64__)
    case Isa::kNeon:
      return neon::phase_dot_complex(weights_re.data(), weights_im.data(), phases.data(), n, c, s);
#endif
    default:
      return scalar::phase_dot_complex(weights_re.data(), weights_im.data(), phases.data(), n, c,
                                       s);
  }
}

}  // namespace lhybrid::kernels

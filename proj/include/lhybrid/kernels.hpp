#pragma once
// Root-of-unity weighted sums: the inner loop of every character sweep.
//
// Character values are carried as integer phase indices k in [0, M), meaning
// exp(2 pi i k / M) for the group exponent M. A RootTable holds cos/sin of
// those M angles so that a sum over n of w_n chi(n) becomes a gather + FMA
// loop. Each kernel has a scalar reference and SIMD variants (AVX2 on x86-64,
// NEON on aarch64) selected at runtime; the variants agree with the reference
// up to floating-point reassociation.

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace lhybrid::kernels {

class RootTable {
 public:
  explicit RootTable(std::int32_t order);

  std::int32_t order() const { return order_; }
  const double* cos_data() const { return cos_.data(); }
  const double* sin_data() const { return sin_.data(); }
  std::complex<double> root(std::int32_t k) const { return {cos_[k], sin_[k]}; }

 private:
  std::int32_t order_;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view isa_name(Isa isa);
/// Best variant supported by the running CPU and compiled into the library.
Isa detect_isa();
/// ISA used by the dispatching entry points below.
Isa active_isa();
/// Overrides dispatch; throws if the variant is unavailable on this machine.
void set_active_isa(Isa isa);
bool isa_available(Isa isa);

/// sum_j w[j] * exp(2 pi i phase[j] / M). Requires 0 <= phase[j] < M.
std::complex<double> phase_dot(std::span<const double> weights,
                               std::span<const std::int32_t> phases, const RootTable& roots);

/// sum_j (w_re[j] + i w_im[j]) * exp(2 pi i phase[j] / M).
std::complex<double> phase_dot_complex(std::span<const double> weights_re,
                                       std::span<const double> weights_im,
                                       std::span<const std::int32_t> phases,
                                       const RootTable& roots);

// Per-ISA entry points, exposed for equivalence tests and benchmarks.
namespace scalar {
std::complex<double> phase_dot(const double* w, const std::int32_t* k, std::size_t n,
                               const double* c, const double* s);
std::complex<double> phase_dot_complex(const double* wr, const double* wi,
                                       const std::int32_t* k, std::size_t n, const double* c,
                                       const double* s);
}  // namespace scalar

namespace avx2 {
std::complex<double> phase_dot(const double* w, const std::int32_t* k, std::size_t n,
                               const double* c, const double* s);
std::complex<double> phase_dot_complex(const double* wr, const double* wi,
                                       const std::int32_t* k, std::size_t n, const double* c,
                                       const double* s);
}  // namespace avx2

namespace neon {
std::complex<double> phase_dot(const double* w, const std::int32_t* k, std::size_t n,
                               const double* c, const double* s);
std::complex<double> phase_dot_complex(const double* wr, const double* wi,
                                       const std::int32_t* k, std::size_t n, const double* c,
                                       const double* s);
}  // namespace neon

}  // namespace lhybrid::kernels

#include <doctest.h>

#include <cmath>
#include <random>

#include "lhybrid/kernels.hpp"
#include "lhybrid/lfunc.hpp"

using namespace lhybrid;
namespace kn = lhybrid::kernels;

namespace {

using Dot = std::complex<double> (*)(const double*, const std::int32_t*, std::size_t, const double*,
                                     const double*);
using DotC = std::complex<double> (*)(const double*, const double*, const std::int32_t*, std::size_t,
                                      const double*, const double*);

struct Variant {
  kn::Isa isa;
  Dot dot;
  DotC dot_c;
};

std::vector<Variant> available_variants() {
  std::vector<Variant> out;
#if defined(__x86_64__)
  if (kn::isa_available(kn::Isa::kAvx2)) out.push_back({kn::Isa::kAvx2, kn::avx2::phase_dot, kn::avx2::phase_dot_complex});
#elif defined(__aarch64__)
  if (kn::isa_available(kn::Isa::kNeon)) out.push_back({kn::Isa::kNeon, kn::neon::phase_dot, kn::neon::phase_dot_complex});
#endif
  return out;
}

struct IsaGuard {
  kn::Isa saved = kn::active_isa();
  ~IsaGuard() { kn::set_active_isa(saved); }
};

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar reference") {
    const kn::RootTable roots(12);
    CHECK(std::abs(roots.root(3) - std::complex<double>(0, 1)) < 1e-15);
    const std::vector<double> w{1, 2, 3};
    const std::vector<std::int32_t> k{0, 6, 3};
    const auto v = kn::scalar::phase_dot(w.data(), k.data(), 3, roots.cos_data(), roots.sin_data());
    CHECK(std::abs(v - std::complex<double>(-1, 3)) < 1e-14);
    CHECK(kn::scalar::phase_dot(w.data(), k.data(), 0, roots.cos_data(), roots.sin_data()) == 0.0);
    CHECK(kn::isa_available(kn::Isa::kScalar));
  }

  TEST_CASE("SIMD variants match the scalar reference") {
    const auto variants = available_variants();
    if (variants.empty()) MESSAGE("no SIMD variant on this machine; scalar only");
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> wd(-1, 1);
    for (const std::int32_t M : {1, 2, 6, 100, 5040}) {
      const kn::RootTable roots(M);
      std::uniform_int_distribution<std::int32_t> kd(0, M - 1);
      for (std::size_t n = 0; n <= 67; n += (n < 20 ? 1 : 7)) {
        std::vector<double> wr(n), wi(n);
        std::vector<std::int32_t> ph(n);
        double scale = 0;
        for (std::size_t j = 0; j < n; ++j) {
          wr[j] = wd(rng);
          wi[j] = wd(rng);
          ph[j] = kd(rng);
          scale += std::abs(wr[j]) + std::abs(wi[j]);
        }
        const auto ref = kn::scalar::phase_dot(wr.data(), ph.data(), n, roots.cos_data(), roots.sin_data());
        const auto ref_c = kn::scalar::phase_dot_complex(wr.data(), wi.data(), ph.data(), n, roots.cos_data(),
                                                         roots.sin_data());
        for (const auto& v : variants) {
          INFO(kn::isa_name(v.isa) << " M=" << M << " n=" << n);
          REQUIRE(std::abs(v.dot(wr.data(), ph.data(), n, roots.cos_data(), roots.sin_data()) - ref) <=
                  1e-14 * (scale + 1));
          REQUIRE(std::abs(v.dot_c(wr.data(), wi.data(), ph.data(), n, roots.cos_data(), roots.sin_data()) -
                           ref_c) <= 1e-14 * (scale + 1));
        }
      }
    }
  }

  TEST_CASE("dispatch") {
    IsaGuard guard;
    CHECK(kn::active_isa() == kn::detect_isa());
    for (const auto isa : {kn::Isa::kScalar, kn::Isa::kAvx2, kn::Isa::kNeon}) {
      if (!kn::isa_available(isa)) CHECK_THROWS(kn::set_active_isa(isa));
    }
    // the same L-values under every available ISA
    const auto chars = CharacterGroup::create(1009)->primitive_characters();
    kn::set_active_isa(kn::Isa::kScalar);
    std::vector<cplx> ref;
    for (std::size_t i = 0; i < chars.size(); i += 50) ref.push_back(l_value(chars[i], 0.5));
    for (const auto& v : available_variants()) {
      kn::set_active_isa(v.isa);
      std::size_t j = 0;
      for (std::size_t i = 0; i < chars.size(); i += 50, ++j) {
        REQUIRE(std::abs(l_value(chars[i], 0.5) - ref[j]) <= 1e-12 * std::abs(ref[j]) + 1e-13);
      }
    }
  }
}

// Compiled with -mavx2 -mfma; only reached when the CPU reports both.
#include <immintrin.h>

#include "lhybrid/kernels.hpp"

namespace lhybrid::kernels::avx2 {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

}  // namespace

std::complex<double> phase_dot(const double* w, const std::int32_t* k, std::size_t n,
                               const double* c, const double* s) {
  __m256d re0 = _mm256_setzero_pd();
  __m256d im0 = _mm256_setzero_pd();
  __m256d re1 = _mm256_setzero_pd();
  __m256d im1 = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 8 <= n; j += 8) {
    const __m128i i0 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(k + j));
    const __m128i i1 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(k + j + 4));
    const __m256d w0 = _mm256_loadu_pd(w + j);
    const __m256d w1 = _mm256_loadu_pd(w + j + 4);
    re0 = _mm256_fmadd_pd(w0, _mm256_i32gather_pd(c, i0, 8), re0);
    im0 = _mm256_fmadd_pd(w0, _mm256_i32gather_pd(s, i0, 8), im0);
    re1 = _mm256_fmadd_pd(w1, _mm256_i32gather_pd(c, i1, 8), re1);
    im1 = _mm256_fmadd_pd(w1, _mm256_i32gather_pd(s, i1, 8), im1);
  }
  for (; j + 4 <= n; j += 4) {
    const __m128i i0 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(k + j));
    const __m256d w0 = _mm256_loadu_pd(w + j);
    re0 = _mm256_fmadd_pd(w0, _mm256_i32gather_pd(c, i0, 8), re0);
    im0 = _mm256_fmadd_pd(w0, _mm256_i32gather_pd(s, i0, 8), im0);
  }
  double re = hsum(_mm256_add_pd(re0, re1));
  double im = hsum(_mm256_add_pd(im0, im1));
  for (; j < n; ++j) {
    re += w[j] * c[k[j]];
    im += w[j] * s[k[j]];
  }
  return {re, im};
}

std::complex<double> phase_dot_complex(const double* wr, const double* wi,
                                       const std::int32_t* k, std::size_t n, const double* c,
                                       const double* s) {
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(k + j));
    const __m256d cj = _mm256_i32gather_pd(c, idx, 8);
    const __m256d sj = _mm256_i32gather_pd(s, idx, 8);
    const __m256d a = _mm256_loadu_pd(wr + j);
    const __m256d b = _mm256_loadu_pd(wi + j);
    re = _mm256_fmadd_pd(a, cj, re);
    re = _mm256_fnmadd_pd(b, sj, re);
    im = _mm256_fmadd_pd(a, sj, im);
    im = _mm256_fmadd_pd(b, cj, im);
  }
  double sre = hsum(re);
  double sim = hsum(im);
  for (; j < n; ++j) {
    const double cj = c[k[j]];
    const double sj = s[k[j]];
    sre += wr[j] * cj - wi[j] * sj;
    sim += wr[j] * sj + wi[j] * cj;
  }
  return {sre, sim};
}

}  // namespace lhybrid::kernels::avx2

// NEON has no gather; table lookups are done per lane and the FMAs vectorized.
#include <arm_neon.h>

#include "lhybrid/kernels.hpp"

namespace lhybrid::kernels::neon {

std::complex<double> phase_dot(const double* w, const std::int32_t* k, std::size_t n,
                               const double* c, const double* s) {
  float64x2_t re = vdupq_n_f64(0.0);
  float64x2_t im = vdupq_n_f64(0.0);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const double cv[2] = {c[k[j]], c[k[j + 1]]};
    const double sv[2] = {s[k[j]], s[k[j + 1]]};
    const float64x2_t wv = vld1q_f64(w + j);
    re = vfmaq_f64(re, wv, vld1q_f64(cv));
    im = vfmaq_f64(im, wv, vld1q_f64(sv));
  }
  double sre = vaddvq_f64(re);
  double sim = vaddvq_f64(im);
  for (; j < n; ++j) {
    sre += w[j] * c[k[j]];
    sim += w[j] * s[k[j]];
  }
  return {sre, sim};
}

std::complex<double> phase_dot_complex(const double* wr, const double* wi,
                                       const std::int32_t* k, std::size_t n, const double* c,
                                       const double* s) {
  float64x2_t re = vdupq_n_f64(0.0);
  float64x2_t im = vdupq_n_f64(0.0);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const double cv[2] = {c[k[j]], c[k[j + 1]]};
    const double sv[2] = {s[k[j]], s[k[j + 1]]};
    const float64x2_t a = vld1q_f64(wr + j);
    const float64x2_t b = vld1q_f64(wi + j);
    const float64x2_t cj = vld1q_f64(cv);
    const float64x2_t sj = vld1q_f64(sv);
    re = vfmaq_f64(re, a, cj);
    re = vfmsq_f64(re, b, sj);
    im = vfmaq_f64(im, a, sj);
    im = vfmaq_f64(im, b, cj);
  }
  double sre = vaddvq_f64(re);
  double sim = vaddvq_f64(im);
  for (; j < n; ++j) {
    const double cj = c[k[j]];
    const double sj = s[k[j]];
    sre += wr[j] * cj - wi[j] * sj;
    sim += wr[j] * sj + wi[j] * cj;
  }
  return {sre, sim};
}

}  // namespace lhybrid::kernels::neon

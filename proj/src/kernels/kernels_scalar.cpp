#include "lhybrid/kernels.hpp"

namespace lhybrid::kernels::scalar {

std::complex<double> phase_dot(const double* w, const std::int32_t* k, std::size_t n,
                               const double* c, const double* s) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    re += w[j] * c[k[j]];
    im += w[j] * s[k[j]];
  }
  return {re, im};
}

std::complex<double> phase_dot_complex(const double* wr, const double* wi,
                                       const std::int32_t* k, std::size_t n, const double* c,
                                       const double* s) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double cj = c[k[j]];
    const double sj = s[k[j]];
    re += wr[j] * cj - wi[j] * sj;
    im += wr[j] * sj + wi[j] * cj;
  }
  return {re, im};
}

}  // namespace lhybrid::kernels::scalar

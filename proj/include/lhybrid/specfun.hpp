#pragma once
// Special functions used by the hybrid-product and moment computations.
// Everything is double precision.

#include <complex>
#include <cstdint>
#include <vector>

namespace lhybrid {

using cplx = std::complex<double>;

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// Principal-branch exponential integral E1(z) = int_z^inf e^-w / w dw, cut along
/// the negative reals. Power series for small |z| (and the left half plane near
/// the real axis), modified-Lentz continued fraction elsewhere.
cplx exp_integral_e1(cplx z);

/// log Gamma(z), analytic continuation from the positive axis (imaginary part
/// continuous off the negative real axis). Throws at the poles.
cplx log_gamma(cplx z);

/// psi(x) = Gamma'(x)/Gamma(x) for real x > 0.
double digamma(double x);

struct HurwitzOptions {
  int shift = 0;        // Euler-Maclaurin shift N; 0 picks max(15, |s| + 5)
  int bernoulli_terms = 12;
};

/// zeta(s, a) = sum_{n >= 0} (n + a)^-s for a > 0, continued to s != 1.
cplx hurwitz_zeta(cplx s, double a, HurwitzOptions opts = {});

/// G(n) for integer n >= 1 (G(1) = G(2) = 1).
double barnes_g_int(int n);
double log_barnes_g_int(int n);
/// G(k+1)^2 / G(2k+1), computed in log space.
double barnes_ratio(int k);

/// sum_{m >= 0} d_k(p^m)^2 / p^m.
double local_divisor_square_sum(double k, double p);

/// prod_p (1 - 1/p)^{k^2} sum_m d_k(p^m)^2 / p^m: explicit product over
/// p <= prime_cutoff plus a tail from the per-prime Taylor expansion of the
/// log local factor, summed against prime-zeta remainders.
double arithmetic_factor_a(double k, std::int64_t prime_cutoff = 1'000'000);

/// Gauss-Legendre rule on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_legendre(int n);

/// The smooth bump u: a mass-one C-infinity bump supported on [e^{1-1/X}, e],
///   u(x) = c exp(-1 / (1 - t^2)),  t = affine image of x in [-1, 1].
class BumpSpec {
 public:
  explicit BumpSpec(double X, int nodes = 64);

  double X() const { return X_; }
  double lower() const { return lo_; }
  double upper() const { return hi_; }
  int node_count() const { return static_cast<int>(x_.size()); }

  double u(double x) const;
  /// v(t) = int_t^inf u(x) dx.
  double v(double t) const;
  /// U(z) = int u(x) E1(z log x) dx, by the Gauss-Legendre rule of this spec.
  cplx U(cplx z) const;
  /// Mass of u under this spec's rule.
  double quadrature_mass() const;

 private:
  double X_;
  double lo_;
  double hi_;
  double norm_;  // c
  std::vector<double> x_;
  std::vector<double> w_;   // GL weight times u(x_j)
  std::vector<double> logx_;
};

/// W_a(x) = (1 / 2 pi i) int_(c) (Gamma((1/2 + s + a)/2) / Gamma((1/2 + a)/2))^2 x^-s ds/s.
///
/// Evaluated by the trapezoid rule on the vertical line Re s = c. The gamma
/// coefficients are precomputed, so repeated evaluation costs one rotation
/// per node. c may be negative (above -(1/2 + a)); the residue at s = 0 is
/// then added back.
class WeightW {
 public:
  /// Accurate for |log x| <= 40.
  explicit WeightW(int parity, double c = 1.0, double height = 60.0);

  int parity() const { return parity_; }
  double line() const { return c_; }
  std::size_t node_count() const { return coeff_.size(); }
  double operator()(double x) const;

 private:
  int parity_;
  double c_;
  double step_;
  std::vector<cplx> coeff_;  // G(c + i t_j) / (c + i t_j), t_j = j * step_, j >= 0
};

double weight_W(int parity, double x, double c = 1.0);

}  // namespace lhybrid

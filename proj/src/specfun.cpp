#include "lhybrid/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "lhybrid/arith.hpp"

namespace lhybrid {
namespace {

constexpr double kPi = std::numbers::pi;

// B_2, B_4, ..., B_30.
constexpr std::array<double, 15> kBernoulli = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
};

// Prime zeta P(j) = sum_p p^-j for j = 2..10.
constexpr std::array<double, 9> kPrimeZeta = {
    0.45224742004106549851, 0.17476263929944353642, 0.076993139764246844943,
    0.035755017483924257133, 0.017070086850636512954, 0.0082838328561335925351,
    0.0040614053665178305605, 0.0020044675749624506631, 0.00099360357443698021786,
};

cplx e1_series(cplx z) {
  // E1(z) = -gamma - log z - sum_{n>=1} (-z)^n / (n n!)
  cplx sum = 0.0;
  cplx term = 1.0;
  for (int n = 1; n < 400; ++n) {
    term *= -z / static_cast<double>(n);
    const cplx add = term / static_cast<double>(n);
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return -kEulerGamma - std::log(z) - sum;
}

cplx e1_continued_fraction(cplx z) {
  // E1(z) = e^-z / (z + 1 - 1/(z + 3 - 4/(z + 5 - ...))), modified Lentz.
  constexpr double kTiny = 1e-300;
  cplx b = z + 1.0;
  cplx c = 1.0 / kTiny;
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    const cplx delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-z);
}

}  // namespace

cplx exp_integral_e1(cplx z) {
  if (z == cplx(0.0, 0.0)) throw DomainError("E1: logarithmic singularity at z = 0");
  const double r = std::abs(z);
  if (r <= 2.5 || (z.real() < 0.0 && std::abs(z.imag()) < 10.0)) return e1_series(z);
  return e1_continued_fraction(z);
}

cplx log_gamma(cplx z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
    throw DomainError("log_gamma: pole at nonpositive integer");
  }
  // Shift to Re z >= 12 and use Stirling's series.
  cplx shift = 0.0;
  while (z.real() < 12.0) {
    shift += std::log(z);
    z += 1.0;
  }
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx series = 0.0;
  cplx power = inv;
  for (int k = 1; k <= 12; ++k) {
    series += kBernoulli[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * power;
    power *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series - shift;
}

double digamma(double x) {
  if (!(x > 0.0)) throw DomainError("digamma: x must be positive");
  double shift = 0.0;
  while (x < 12.0) {
    shift += 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  double series = 0.0;
  double power = inv2;
  for (int k = 1; k <= 10; ++k) {
    series += kBernoulli[k - 1] / (2.0 * k) * power;
    power *= inv2;
  }
  return std::log(x) - 0.5 / x - series - shift;
}

cplx hurwitz_zeta(cplx s, double a, HurwitzOptions opts) {
  if (s == cplx(1.0, 0.0)) throw DomainError("hurwitz_zeta: pole at s = 1");
  if (!(a > 0.0)) throw DomainError("hurwitz_zeta: a must be positive");
  const int terms = std::clamp(opts.bernoulli_terms, 1, static_cast<int>(kBernoulli.size()));
  const int n_shift = opts.shift > 0 ? opts.shift : std::max(15, static_cast<int>(std::abs(s)) + 5);

  cplx head = 0.0;
  for (int n = 0; n < n_shift; ++n) head += std::exp(-s * std::log(n + a));

  const double na = n_shift + a;
  const double log_na = std::log(na);
  const cplx na_pow = std::exp(-s * log_na);  // (N + a)^-s
  cplx tail = na * na_pow / (s - 1.0) + 0.5 * na_pow;

  // B_2k / (2k)! * s (s+1) ... (s + 2k - 2) * (N + a)^{-s - 2k + 1}
  cplx rising = s * na_pow / na;
  double factorial = 2.0;
  for (int k = 1; k <= terms; ++k) {
    tail += kBernoulli[k - 1] / factorial * rising;
    rising *= (s + (2.0 * k - 1.0)) * (s + 2.0 * k) / (na * na);
    factorial *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
  }
  return head + tail;
}

double log_barnes_g_int(int n) {
  if (n < 1) throw DomainError("barnes_g_int: n must be >= 1");
  double total = 0.0;
  for (int j = 1; j <= n - 2; ++j) total += std::lgamma(j + 1.0);
  return total;
}

double barnes_g_int(int n) { return std::exp(log_barnes_g_int(n)); }

double barnes_ratio(int k) {
  if (k < 0) throw DomainError("barnes_ratio: k must be >= 0");
  return std::exp(2.0 * log_barnes_g_int(k + 1) - log_barnes_g_int(2 * k + 1));
}

double local_divisor_square_sum(double k, double p) {
  double sum = 1.0;
  const double x = 1.0 / p;
  double xm = 1.0;
  for (int m = 1; m < 4000; ++m) {
    xm *= x;
    const double d = divisor_dk_prime_power(k, m);
    const double term = d * d * xm;
    sum += term;
    if (m > 2 && term < 1e-18 * sum) break;
  }
  return sum;
}

double arithmetic_factor_a(double k, std::int64_t prime_cutoff) {
  if (k < 0) throw DomainError("arithmetic_factor_a: k must be >= 0");
  if (prime_cutoff < 2) throw DomainError("arithmetic_factor_a: cutoff must be >= 2");
  if (k == 0.0 || k == 1.0) return 1.0;  // local factor identically 1
  const double k2 = k * k;

  // Taylor coefficients of log[(1-x)^{k^2} sum_m d_k(p^m)^2 x^m] up to x^10.
  constexpr int kOrder = 10;
  std::array<double, kOrder + 1> series{};
  for (int m = 0; m <= kOrder; ++m) {
    const double d = divisor_dk_prime_power(k, m);
    series[m] = d * d;
  }
  // log of the divisor series by the usual recurrence, then add k^2 log(1 - x).
  std::array<double, kOrder + 1> log_divisor{};
  std::array<double, kOrder + 1> log_series{};
  for (int n = 1; n <= kOrder; ++n) {
    double acc = series[n];
    for (int i = 1; i < n; ++i) acc -= static_cast<double>(i) / n * log_divisor[i] * series[n - i];
    log_divisor[n] = acc;
    log_series[n] = acc - k2 / n;
  }

  std::vector<double> logs;
  std::array<double, kOrder + 1> partial_power_sums{};
  for (const std::int64_t p : primes_up_to(prime_cutoff)) {
    const double pd = static_cast<double>(p);
    logs.push_back(k2 * std::log1p(-1.0 / pd) + std::log(local_divisor_square_sum(k, pd)));
    double inv = 1.0;
    for (int j = 1; j <= kOrder; ++j) {
      inv /= pd;
      if (j >= 2) partial_power_sums[j] += inv;
    }
  }
  double tail = 0.0;
  for (int j = 2; j <= kOrder; ++j) {
    tail += log_series[j] * (kPrimeZeta[j - 2] - partial_power_sums[j]);
  }
  return std::exp(pairwise_sum(logs) + tail);
}

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: n must be >= 1");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int j = 2; j <= n; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace lhybrid

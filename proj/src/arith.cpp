#include "lhybrid/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace lhybrid {

Factorization factorize(std::int64_t n) {
  if (n <= 0) throw DomainError("factorize: n must be positive, got " + std::to_string(n));
  Factorization out;
  for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t phi = n;
  for (const auto& [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

int omega(std::int64_t n) { return static_cast<int>(factorize(n).size()); }

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> out{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t base = out.size();
    std::int64_t pk = 1;
    for (int j = 1; j <= e; ++j) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::int64_t> primes_up_to(std::int64_t limit) {
  std::vector<std::int64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::int64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

MultiplicativeTables::MultiplicativeTables(std::int64_t limit) : limit_(limit) {
  if (limit < 2) throw DomainError("multiplicative tables need limit >= 2");
  if (limit > kMaxLimit) throw DomainError("multiplicative tables are capped at 1e7 entries");
  const auto size = static_cast<std::size_t>(limit) + 1;
  spf_.assign(size, 0);
  mobius_.assign(size, 0);
  totient_.assign(size, 0);
  omega_.assign(size, 0);
  mangoldt_base_.assign(size, 0);

  std::vector<std::int32_t> primes;
  mobius_[1] = 1;
  totient_[1] = 1;
  // Linear sieve: each composite is visited once, through its smallest prime.
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::int32_t>(i);
      primes.push_back(static_cast<std::int32_t>(i));
      mobius_[i] = -1;
      totient_[i] = i - 1;
      omega_[i] = 1;
      mangoldt_base_[i] = static_cast<std::int32_t>(i);
    }
    for (const std::int32_t p : primes) {
      const std::int64_t ip = i * p;
      if (p > spf_[i] || ip > limit) break;
      spf_[ip] = p;
      if (p == spf_[i]) {
        mobius_[ip] = 0;
        totient_[ip] = totient_[i] * p;
        omega_[ip] = omega_[i];
        mangoldt_base_[ip] = mangoldt_base_[i] == p ? p : 0;
      } else {
        mobius_[ip] = static_cast<std::int8_t>(-mobius_[i]);
        totient_[ip] = totient_[i] * (p - 1);
        omega_[ip] = static_cast<std::int8_t>(omega_[i] + 1);
        mangoldt_base_[ip] = 0;
      }
    }
  }
}

double MultiplicativeTables::mangoldt(std::int64_t n) const {
  const std::int64_t p = mangoldt_base(n);
  return p == 0 ? 0.0 : std::log(static_cast<double>(p));
}

Factorization MultiplicativeTables::factorize(std::int64_t n) const {
  if (n <= 0 || n > limit_) throw DomainError("factorize: n outside table range");
  Factorization out;
  while (n > 1) {
    const std::int64_t p = spf_[n];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  return out;
}

double divisor_dk_prime_power(double k, int m) {
  if (m < 0) throw DomainError("divisor_dk_prime_power: negative exponent");
  if (m == 0) return 1.0;
  if (k > 0 && m >= 20) {
    return std::exp(std::lgamma(m + k) - std::lgamma(m + 1.0) - std::lgamma(k));
  }
  double value = 1.0;
  for (int j = 1; j <= m; ++j) value *= (j - 1 + k) / j;
  return value;
}

double divisor_dk(double k, std::int64_t n) {
  if (n <= 0) throw DomainError("divisor_dk: n must be positive");
  double value = 1.0;
  for (const auto& [p, e] : factorize(n)) value *= divisor_dk_prime_power(k, e);
  return value;
}

SmoothSet smooth_numbers(double X, std::int64_t n_max) {
  if (X < 2) throw DomainError("smooth_numbers: X must be >= 2");
  if (n_max < 1) throw DomainError("smooth_numbers: n_max must be >= 1");
  SmoothSet out;
  out.bound = X;
  out.members.push_back(1);
  for (const std::int64_t p : primes_up_to(static_cast<std::int64_t>(std::floor(X)))) {
    // Multiply every current member by powers of p; members stay p-free before this step.
    const std::size_t base = out.members.size();
    for (std::size_t i = 0; i < base; ++i) {
      std::int64_t v = out.members[i];
      while (v <= n_max / p) {
        v *= p;
        out.members.push_back(v);
      }
    }
  }
  std::sort(out.members.begin(), out.members.end());
  return out;
}

double coprime_harmonic(double x, std::int64_t q, int l) {
  if (x < 2) throw DomainError("coprime_harmonic: x must be >= 2");
  if (q < 1) throw DomainError("coprime_harmonic: q must be >= 1");
  if (l < 0 || l > 2) throw DomainError("coprime_harmonic: l must be 0, 1 or 2");
  const auto n_max = static_cast<std::int64_t>(std::floor(x));
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(n_max));
  for (std::int64_t n = 1; n <= n_max; ++n) {
    if (std::gcd(n, q) != 1) continue;
    const double lg = std::log(x / static_cast<double>(n));
    terms.push_back(std::pow(lg, l) / static_cast<double>(n));
  }
  return pairwise_sum(terms);
}

double two_omega_harmonic(double x, std::int64_t q, std::int64_t h, int l) {
  if (x < 2) throw DomainError("two_omega_harmonic: x must be >= 2");
  if (q < 1 || h < 1) throw DomainError("two_omega_harmonic: q, h must be >= 1");
  if (l < 0 || l > 2) throw DomainError("two_omega_harmonic: l must be 0, 1 or 2");
  const auto n_max = static_cast<std::int64_t>(std::floor(x));
  const MultiplicativeTables tables(std::max<std::int64_t>(n_max, 2));
  const Factorization h_primes = factorize(h);
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(n_max));
  for (std::int64_t n = 1; n <= n_max; ++n) {
    if (std::gcd(n, q) != 1) continue;
    int shared = 0;
    for (const auto& pe : h_primes) shared += (n % pe.prime == 0) ? 1 : 0;
    const double weight = std::ldexp(1.0, tables.omega(n) - shared);
    const double lg = std::log(x / static_cast<double>(n));
    terms.push_back(weight * std::pow(lg, l) / static_cast<double>(n));
  }
  return pairwise_sum(terms);
}

double two_omega_harmonic_main_term(double x, std::int64_t q, std::int64_t h) {
  const double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
  double value = std::pow(std::log(x), 4) / (12.0 * zeta2);
  for (const auto& [p, e] : factorize(h * q)) {
    const double inv = 1.0 / static_cast<double>(p);
    value *= (1.0 - inv) / (1.0 + inv);
    if (h % p == 0 && q % p != 0) value /= (1.0 - inv);
  }
  return value;
}

double delta_weight(std::int64_t m) {
  if (m <= 0) throw DomainError("delta_weight: m must be positive");
  double value = 1.0;
  for (const auto& [p, r] : factorize(m)) {
    const double inv = 1.0 / static_cast<double>(p);
    value *= 1.0 + r * (1.0 - inv) / (1.0 + inv);
  }
  return value;
}

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kLeaf = 32;
  if (values.size() <= kLeaf) {
    double s = 0.0;
    for (const double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace lhybrid

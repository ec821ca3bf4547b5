#pragma once
// Integer and multiplicative-function primitives.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace lhybrid {

/// Raised for inputs outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct PrimePower {
  std::int64_t prime;
  int exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Ascending by prime, exponents >= 1. The factorization of 1 is empty.
using Factorization = std::vector<PrimePower>;

Factorization factorize(std::int64_t n);
std::int64_t euler_phi(std::int64_t n);
int omega(std::int64_t n);
std::vector<std::int64_t> divisors(std::int64_t n);
std::vector<std::int64_t> primes_up_to(std::int64_t limit);

/// Sieved tables for 1 <= n <= limit.
///
/// The von Mangoldt function is kept symbolic: for n = p^j the table stores p,
/// and 0 otherwise, so Lambda(n) = log(mangoldt_base(n)) is only evaluated at
/// the point of use.
class MultiplicativeTables {
 public:
  static constexpr std::int64_t kMaxLimit = 10'000'000;

  explicit MultiplicativeTables(std::int64_t limit);

  std::int64_t limit() const { return limit_; }
  int mobius(std::int64_t n) const { return mobius_.at(n); }
  std::int64_t totient(std::int64_t n) const { return totient_.at(n); }
  int omega(std::int64_t n) const { return omega_.at(n); }
  std::int64_t smallest_prime_factor(std::int64_t n) const { return spf_.at(n); }
  std::int64_t mangoldt_base(std::int64_t n) const { return mangoldt_base_.at(n); }
  double mangoldt(std::int64_t n) const;
  Factorization factorize(std::int64_t n) const;

 private:
  std::int64_t limit_;
  std::vector<std::int32_t> spf_;
  std::vector<std::int8_t> mobius_;
  std::vector<std::int64_t> totient_;
  std::vector<std::int8_t> omega_;
  std::vector<std::int32_t> mangoldt_base_;
};

/// d_k(p^m) = Gamma(m + k) / (m! Gamma(k)), extended to real k.
double divisor_dk_prime_power(double k, int m);

/// Multiplicative extension of d_k; equals the ordered-factorization count for
/// integer k >= 1.
double divisor_dk(double k, std::int64_t n);

struct SmoothSet {
  double bound = 0;
  std::vector<std::int64_t> members;
};

/// All integers in [1, n_max] whose prime factors are <= X, ascending.
SmoothSet smooth_numbers(double X, std::int64_t n_max);

/// Sum over n <= x, (n, q) = 1 of log(x/n)^l / n, by direct summation.
double coprime_harmonic(double x, std::int64_t q, int l);

/// Sum over n <= x, (n, q) = 1 of 2^(omega(n) - omega((n, h))) log(x/n)^l / n.
double two_omega_harmonic(double x, std::int64_t q, std::int64_t h, int l);

/// Leading asymptotic of two_omega_harmonic for l = 2:
///   (log x)^4 / (12 zeta(2)) prod_{p | hq} (1-1/p)/(1+1/p) prod_{p | h, p !| q} 1/(1-1/p).
double two_omega_harmonic_main_term(double x, std::int64_t q, std::int64_t h);

/// prod over p^r || m of (1 + r (1-1/p)/(1+1/p)).
double delta_weight(std::int64_t m);

/// Pairwise (cascade) summation in index order. Bit-stable for a given input.
double pairwise_sum(std::span<const double> values);

}  // namespace lhybrid

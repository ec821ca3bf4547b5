#pragma once
// Dirichlet character groups mod q.
//
// (Z/qZ)* is decomposed by CRT into cyclic components: one per odd prime power
// (generated by a primitive root), <-1> for 4 | q, and <-1> x <5> for 8 | q.
// A character is an exponent vector over the components; its value at a unit r
// is exp(2 pi i k / M) where M is the group exponent and
//   k = sum_i e_i * log_i(r) * (M / ord_i)  (mod M).
// All of this is integer arithmetic; doubles only appear through the RootTable.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "lhybrid/arith.hpp"
#include "lhybrid/kernels.hpp"

namespace lhybrid {

struct CyclicComponent {
  std::int64_t prime;
  int prime_exponent;        // the component lives mod prime^prime_exponent
  std::int64_t modulus;      // prime^prime_exponent
  std::int64_t generator;    // residue mod `modulus` (for <-1>: modulus - 1)
  std::int32_t order;
  bool is_sign = false;      // the <-1> factor of (Z/2^e)*, e >= 2
};

class DirichletCharacter;

class CharacterGroup : public std::enable_shared_from_this<CharacterGroup> {
 public:
  static std::shared_ptr<const CharacterGroup> create(std::int64_t q);

  std::int64_t modulus() const { return q_; }
  std::int64_t phi() const { return static_cast<std::int64_t>(units_.size()); }
  std::int32_t exponent() const { return exponent_; }
  std::size_t size() const { return static_cast<std::size_t>(phi()); }
  std::span<const CyclicComponent> components() const { return components_; }

  /// Residues in [1, q) coprime to q, ascending (for q = 1 this is {0}).
  std::span<const std::int64_t> units() const { return units_; }
  /// Discrete logs of residue r (any integer, reduced mod q); empty if gcd(r, q) > 1.
  std::span<const std::int32_t> logs(std::int64_t r) const;

  const kernels::RootTable& roots() const { return roots_; }
  /// exp(2 pi i u / q) for each unit u, aligned with units().
  std::span<const double> additive_cos() const { return additive_cos_; }
  std::span<const double> additive_sin() const { return additive_sin_; }

  /// Characters in lexicographic exponent order; index 0 is principal.
  DirichletCharacter character(std::size_t index) const;
  DirichletCharacter character_from_exponents(std::vector<std::int32_t> exponents) const;
  std::vector<DirichletCharacter> all_characters() const;
  std::vector<DirichletCharacter> primitive_characters() const;

  /// Binary layout: "LHCG", u32 version, i64 q, u32 ncomp, per component
  /// (i64 prime, i32 exponent, i64 generator, i32 order, u8 sign), then the
  /// q x ncomp int32 discrete-log matrix (-1 for non-units).
  void serialize(std::ostream& out) const;
  /// Validates the header (generator orders, order product = phi(q)) and the
  /// log-matrix ranges; throws std::runtime_error on corruption.
  static std::shared_ptr<const CharacterGroup> deserialize(std::istream& in);

 private:
  explicit CharacterGroup(std::int64_t q);
  CharacterGroup(std::int64_t q, std::vector<CyclicComponent> comps,
                 std::vector<std::int32_t> log_matrix);
  void finish_setup();

  std::int64_t q_;
  std::int32_t exponent_ = 1;
  std::vector<CyclicComponent> components_;
  std::vector<std::int64_t> units_;
  std::vector<std::int32_t> log_matrix_;  // q x ncomp
  std::vector<std::int32_t> stride_;      // M / ord_i
  kernels::RootTable roots_;
  std::vector<double> additive_cos_;
  std::vector<double> additive_sin_;

  friend class DirichletCharacter;
};

class DirichletCharacter {
 public:
  const CharacterGroup& group() const { return *group_; }
  std::int64_t modulus() const { return group_->modulus(); }
  std::span<const std::int32_t> exponents() const { return exponents_; }
  std::size_t index() const;

  /// Phase index k with chi(n) = exp(2 pi i k / M), or nullopt when gcd(n, q) > 1.
  std::optional<std::int32_t> phase(std::int64_t n) const;
  std::complex<double> operator()(std::int64_t n) const;
  /// Phases at group().units(), in the same order.
  std::vector<std::int32_t> unit_phases() const;
  void unit_phases(std::vector<std::int32_t>& out) const;
  /// Phase for every residue 0..q-1, with -1 at non-units.
  void residue_phases(std::vector<std::int32_t>& out) const;

  int parity() const { return parity_; }
  std::int64_t conductor() const { return conductor_; }
  bool is_primitive() const { return conductor_ == modulus(); }
  bool is_principal() const;
  bool is_real() const;
  DirichletCharacter conj() const;

  std::complex<double> gauss_sum() const;
  /// tau(chi) / (i^a sqrt(q)); primitive characters only.
  std::complex<double> root_number() const;

  /// Smallest d | q such that chi(r) = 1 for every unit r = 1 (mod d),
  /// found by scanning divisors. Independent of the component formula used
  /// for conductor().
  std::int64_t conductor_by_search() const;

  friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
    return a.group_ == b.group_ && a.exponents_ == b.exponents_;
  }

 private:
  DirichletCharacter(std::shared_ptr<const CharacterGroup> group, std::vector<std::int32_t> exps);

  std::shared_ptr<const CharacterGroup> group_;
  std::vector<std::int32_t> exponents_;
  int parity_ = 0;
  std::int64_t conductor_ = 1;

  friend class CharacterGroup;
};

/// q prod_{p || q} (1 - 2/p) prod_{p^2 | q} (1 - 1/p)^2.
std::int64_t phi_star(std::int64_t q);

/// sum over h | q, h | (m - n) of phi(h) mu(q/h); with a sign, the primitive
/// characters of parity `sign` only:
///   (S(m - n) + (-1)^sign S(m + n)) / 2.
/// Exact integer arithmetic. Requires gcd(mn, q) = 1.
std::int64_t orthogonality_formula(std::int64_t q, std::int64_t m, std::int64_t n,
                                   std::optional<int> sign = std::nullopt);

/// sum over primitive chi (of the given parity, if any) of chi(m) conj(chi(n)).
std::complex<double> orthogonality_bruteforce(const CharacterGroup& group, std::int64_t m,
                                              std::int64_t n,
                                              std::optional<int> sign = std::nullopt);

struct OrthogonalityAudit {
  std::int64_t q = 0;
  std::int64_t pairs = 0;       // (m, n) with m, n <= m_max, gcd(mn, q) = 1
  double max_deviation = 0;     // largest |brute force - formula| over the three variants
  std::int64_t mismatches = 0;  // variants whose rounded brute-force sum differs from the formula
};

/// Brute-force primitive-character sums against orthogonality_formula, for
/// all three variants (unsigned, even, odd). The primitive characters are
/// enumerated once.
OrthogonalityAudit orthogonality_audit(const CharacterGroup& group, std::int64_t m_max);

}  // namespace lhybrid

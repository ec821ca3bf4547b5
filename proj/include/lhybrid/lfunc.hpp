#pragma once
// L(s, chi), the completed Lambda, the real rotation on the critical line,
// zero location, and the approximate-functional-equation forms A = B + C.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lhybrid/chars.hpp"
#include "lhybrid/specfun.hpp"

namespace lhybrid {

/// zeta(s, a/q) for every unit a of a group, aligned with group.units().
/// L(s, chi) for all characters of the group at one s is then a single
/// phase_dot per character.
class HurwitzTable {
 public:
  HurwitzTable(const CharacterGroup& group, cplx s);

  cplx s() const { return s_; }
  std::int64_t modulus() const { return q_; }
  std::span<const double> re() const { return re_; }
  std::span<const double> im() const { return im_; }
  bool is_real() const { return real_; }

 private:
  cplx s_;
  std::int64_t q_;
  bool real_;
  std::vector<double> re_;
  std::vector<double> im_;
};

/// L(s, chi) = q^-s sum_a chi(a) zeta(s, a/q).
cplx l_value(const DirichletCharacter& chi, cplx s);
/// Same, reusing a table built for chi's group at the wanted s.
cplx l_value(const DirichletCharacter& chi, const HurwitzTable& table);

/// Lambda(1/2 + s, chi) = (q/pi)^{s/2} Gamma((s + 1/2 + a)/2) L(1/2 + s, chi).
/// Note the shift: the argument is s, not 1/2 + s.
cplx completed_lambda(const DirichletCharacter& chi, cplx s);
/// Same, with L(1/2 + s) taken from a table built at 1/2 + s.
cplx completed_lambda(const DirichletCharacter& chi, cplx s, const HurwitzTable& at_half_plus_s);

struct HardyValue {
  double value;  // Re[eps^{-1/2} Lambda(1/2 + it)]
  double imag;   // the part that should vanish
};

/// Rotation of Lambda(1/2 + it, chi) onto the real line by the principal
/// square root of the root number.
double hardy_z(const DirichletCharacter& chi, double t);
HardyValue hardy_z_diagnostic(const DirichletCharacter& chi, double t);

struct ZeroList {
  std::int64_t q = 0;
  std::size_t char_index = 0;
  double height = 0;  // T
  double step = 0;
  std::vector<double> gammas;  // ascending, in [-T, T]
  double expected_count = 0;   // smooth count from the gamma-factor phase
  bool warning = false;
  std::string status = "ok";
};

/// Expected number of zeros with |gamma| <= T from the phase of the gamma
/// factor, (theta(T) - theta(-T)) / pi.
double zero_count_estimate(const DirichletCharacter& chi, double T);

/// Sign changes of hardy_z on [-T, T], refined by bisection. step <= 0 picks
/// a quarter of the mean zero gap (capped at 0.1). A count more than 2.5 away
/// from zero_count_estimate sets the warning flag.
ZeroList find_zeros(const DirichletCharacter& chi, double T, double step = 0.0);

/// Columns: q,char_index,gamma.
void write_zero_csv(std::ostream& out, const ZeroList& zeros, bool header = true);
/// Reads rows written by write_zero_csv (header optional). Metadata other than
/// q and the index is not stored in the CSV.
ZeroList read_zero_csv(std::istream& in);

struct QuadraticFormValue {
  cplx A;
  cplx B;
  cplx C;
  double Z = 0;        // q / 2^omega(q)
  double cutoff = 0;   // ab <= cutoff
  std::size_t terms_B = 0;  // number of pairs (a, b) in each part
  std::size_t terms_C = 0;
};

/// W_a(pi n / q) / sqrt(n) for n <= cutoff, shared by every character of one
/// parity mod q.
class QuadraticFormTable {
 public:
  QuadraticFormTable(std::int64_t q, int parity, double tail_factor = 30.0);

  std::int64_t modulus() const { return q_; }
  int parity() const { return parity_; }
  std::int64_t cutoff() const { return static_cast<std::int64_t>(weights_.size()) - 1; }
  double weight(std::int64_t n) const { return weights_[n]; }

 private:
  std::int64_t q_;
  int parity_;
  std::vector<double> weights_;  // index n, weights_[0] unused
};

/// A = sum_{a,b} chi(a) conj chi(b) W_a(pi ab / q) / sqrt(ab), over ab <= tail_factor q,
/// split at ab <= Z (B) and ab > Z (C). 2A = |L(1/2, chi)|^2.
QuadraticFormValue quadratic_forms(const DirichletCharacter& chi, double tail_factor = 30.0);
QuadraticFormValue quadratic_forms(const DirichletCharacter& chi, const QuadraticFormTable& table);

/// Offsets s at which lvalue_checks tests Lambda(1/2 + s, chi) = eps Lambda(1/2 - s, conj chi).
std::vector<cplx> functional_equation_points();

struct LValueCheck {
  std::size_t char_index = 0;
  int parity = 0;
  cplx L;
  cplx A;
  double dual_relative = 0;  // |2A - |L|^2| / |L|^2
  double fe_relative = 0;    // worst |Lambda(1/2+s) - eps Lambda(1/2-s, conj)| / |Lambda(1/2+s)|
};

/// Both self-checks for every primitive character of the group, in
/// primitive_characters() order.
std::vector<LValueCheck> lvalue_checks(const CharacterGroup& group, double tail_factor = 30.0,
                                       unsigned threads = 0);

}  // namespace lhybrid

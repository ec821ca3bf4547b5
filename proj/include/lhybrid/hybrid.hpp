#pragma once
// Hybrid Euler-Hadamard decomposition at the central point:
// L(1/2, chi) ~ P_X(chi) Z_X(chi).

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "lhybrid/arith.hpp"
#include "lhybrid/chars.hpp"
#include "lhybrid/lfunc.hpp"
#include "lhybrid/specfun.hpp"

namespace lhybrid {

/// exp(sum_{p^j <= X} chi(p)^j / (j p^{j/2})).
cplx p_x(const DirichletCharacter& chi, double X);
/// exp(sum_{p^j <= X} chi(p)^j / (j p^{j s})).
cplx p_x_general(const DirichletCharacter& chi, cplx s, double X);
/// prod_{p <= X} (1 - chi(p) p^-s)^-1 prod_{sqrt X < p <= X} (1 + chi(p)^2 p^{-2s} / 2)^-1.
cplx p_x_star(const DirichletCharacter& chi, cplx s, double X);

enum class CoefficientVariant { kAlpha, kBetaMinus2 };

/// Dirichlet coefficients of P*_X(s, chi)^k, character-free.
struct CoefficientTable {
  double k = 0;
  double X = 0;
  std::int64_t n_max = 0;
  CoefficientVariant variant = CoefficientVariant::kAlpha;
  std::vector<std::int64_t> support;  // X-smooth n <= n_max, ascending
  std::vector<double> values;         // indexed by n in [0, n_max]; 0 off S(X)

  double operator()(std::int64_t n) const;
};

/// Coefficients of (1 - x)^{-k} (1 + x^2/2)^{-k [p > sqrt X]} up to x^order, by
/// direct binomial convolution.
std::vector<double> local_coefficients(double k, std::int64_t p, double X, int order);

/// For kBetaMinus2, k must be -2; entries at p^l with l >= 3 are zeroed.
CoefficientTable coefficient_table(double k, double X, std::int64_t n_max,
                                   CoefficientVariant variant = CoefficientVariant::kAlpha);

/// Columns: n,value (support only).
void write_coefficient_csv(std::ostream& out, const CoefficientTable& table);

/// sum_{n in S(X), n <= cutoff} table(n) chi(n) / sqrt(n).
cplx dirichlet_poly_eval(const CoefficientTable& table, const DirichletCharacter& chi, double cutoff);

/// Everything about one modulus and one X that does not depend on chi: the
/// prime powers up to X with their 1/j weights, the v-window weights, the bump
/// and the two gamma tails.
class HybridContext {
 public:
  HybridContext(std::int64_t q, double X, int bump_nodes = 64);

  std::int64_t modulus() const { return q_; }
  double X() const { return X_; }
  const BumpSpec& bump() const { return bump_; }

  /// exp(-sum_{m >= 0} U((1/2 + a + 2m) log X)).
  double gamma_tail(int parity) const { return gamma_tail_[parity]; }

  cplx p_x(const DirichletCharacter& chi) const;
  /// P_X(chi), and exp(-window part) where the window part is the sum over
  /// prime powers with v < 1 of (1 - v) chi(n) / (j sqrt n). One pass.
  void smoothed_sums(const DirichletCharacter& chi, cplx& p_value, cplx& window) const;

 private:
  std::int64_t q_;
  double X_;
  BumpSpec bump_;
  double gamma_tail_[2];
  std::vector<std::int64_t> powers_;   // p^j <= X
  std::vector<double> weight_;         // 1 / (j p^{j/2})
  std::vector<double> window_weight_;  // weight * (1 - v(e^{log n / log X}))
};

struct HybridValue {
  cplx L;
  cplx P_X;
  cplx Z_X_ratio;
  std::optional<cplx> Z_X_zeros;
  double gamma_tail = 1;  // exp(-sum_m U(...)), real
  cplx window = 1;        // exp(-sum over the v-window of (1 - v) Lambda chi / (sqrt n log n))
  double residual = 0;    // |L / (P_X Z) - 1|, Z from zeros when present, else the ratio form

  /// |gamma_tail * window - 1|, the residual of the ratio form against plain L / P_X.
  double ratio_residual() const { return std::abs(gamma_tail * window - 1.0); }
};

/// Z_X from the exact rearrangement at s = 1/2:
///   Z = L exp(sum_m U((1/2 + a + 2m) log X)) / exp(sum_{n <= X} Lambda(n) chi(n) v(..) / (sqrt n log n)).
/// Then L = P_X * Z * gamma_tail * window exactly.
/// Throws DomainError when |L(1/2, chi)| <= 1e-12.
HybridValue z_x_from_ratio(const DirichletCharacter& chi, double X);
HybridValue z_x_from_ratio(const DirichletCharacter& chi, const HybridContext& ctx, cplx L);

/// exp(-sum_{|gamma| <= T} U(-i gamma log X)).
cplx z_x_from_zeros(const DirichletCharacter& chi, double X, const ZeroList& zeros);
cplx z_x_from_zeros(const BumpSpec& bump, const ZeroList& zeros);

/// |L / (P_X Z_X) - 1| with Z_X from zeros up to height T.
double hybrid_residual(const DirichletCharacter& chi, double X, double T);
double hybrid_residual(const DirichletCharacter& chi, double X, const ZeroList& zeros);

/// Columns: q,char_index,X,L_re,L_im,P_re,P_im,Zratio_re,Zratio_im,Zzeros_re,Zzeros_im,gamma_tail,
/// window_re,window_im,ratio_residual,residual.
void write_hybrid_csv_header(std::ostream& out);
void write_hybrid_csv_row(std::ostream& out, const DirichletCharacter& chi, double X,
                          const HybridValue& value);

}  // namespace lhybrid

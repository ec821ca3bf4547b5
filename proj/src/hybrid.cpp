#include "lhybrid/hybrid.hpp"

#include <cmath>
#include <map>
#include <ostream>

#include "lhybrid/kernels.hpp"

namespace lhybrid {
namespace {

bool is_large_prime(std::int64_t p, double X) {
  const double pd = static_cast<double>(p);
  return pd * pd > X;
}

// Prime powers p^j <= X with chi(p^j) != 0, as (weights, phases) ready for phase_dot.
void prime_power_terms(const DirichletCharacter& chi, cplx s, double X, std::vector<cplx>& terms) {
  terms.clear();
  if (X < 2.0) return;
  const auto limit = static_cast<std::int64_t>(std::floor(X));
  for (const std::int64_t p : primes_up_to(limit)) {
    const auto phase = chi.phase(p);
    if (!phase) continue;
    std::int64_t n = p;
    for (int j = 1; n <= limit; ++j) {
      const double w = 1.0 / j;
      const auto pk = chi.phase(n);
      terms.push_back(w * chi.group().roots().root(*pk) * std::exp(-s * std::log(static_cast<double>(n))));
      if (n > limit / p) break;
      n *= p;
    }
  }
}

}  // namespace

cplx p_x_general(const DirichletCharacter& chi, cplx s, double X) {
  std::vector<cplx> terms;
  prime_power_terms(chi, s, X, terms);
  cplx total = 0.0;
  for (const cplx& t : terms) total += t;
  return std::exp(total);
}

cplx p_x(const DirichletCharacter& chi, double X) { return p_x_general(chi, cplx(0.5, 0.0), X); }

cplx p_x_star(const DirichletCharacter& chi, cplx s, double X) {
  if (X < 2.0) return 1.0;
  cplx log_total = 0.0;
  for (const std::int64_t p : primes_up_to(static_cast<std::int64_t>(std::floor(X)))) {
    const cplx c = chi(p);
    if (c == cplx(0.0, 0.0)) continue;
    const cplx ps = std::exp(-s * std::log(static_cast<double>(p)));
    log_total -= std::log(1.0 - c * ps);
    if (is_large_prime(p, X)) log_total -= std::log(1.0 + 0.5 * c * c * ps * ps);
  }
  return std::exp(log_total);
}

double CoefficientTable::operator()(std::int64_t n) const {
  if (n < 1 || n > n_max) throw DomainError("CoefficientTable: n outside [1, n_max]");
  return values[n];
}

std::vector<double> local_coefficients(double k, std::int64_t p, double X, int order) {
  std::vector<double> a(order + 1, 0.0);
  a[0] = 1.0;
  for (int l = 1; l <= order; ++l) a[l] = a[l - 1] * (l - 1 + k) / l;
  if (!is_large_prime(p, X)) return a;
  // times (1 + x^2/2)^{-k} = sum_j binom(-k, j) 2^-j x^{2j}
  std::vector<double> b(order + 1, 0.0);
  double c = 1.0;
  for (int j = 0; 2 * j <= order; ++j) {
    if (j > 0) c *= (-k - (j - 1)) / j * 0.5;
    b[2 * j] = c;
  }
  std::vector<double> out(order + 1, 0.0);
  for (int i = 0; i <= order; ++i) {
    for (int j = 0; i + j <= order; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

CoefficientTable coefficient_table(double k, double X, std::int64_t n_max, CoefficientVariant variant) {
  if (n_max < 1) throw DomainError("coefficient_table: n_max must be >= 1");
  if (!(X >= 2.0)) throw DomainError("coefficient_table: X must be >= 2");
  if (variant == CoefficientVariant::kBetaMinus2 && k != -2.0) {
    throw DomainError("coefficient_table: the beta variant is defined for k = -2 only");
  }
  CoefficientTable table;
  table.k = k;
  table.X = X;
  table.n_max = n_max;
  table.variant = variant;
  table.support = smooth_numbers(X, n_max).members;
  table.values.assign(static_cast<std::size_t>(n_max) + 1, 0.0);

  std::map<std::int64_t, std::vector<double>> local;
  for (const std::int64_t n : table.support) {
    double value = 1.0;
    for (const auto& [p, e] : factorize(n)) {
      auto it = local.find(p);
      if (it == local.end()) {
        int order = 0;
        for (std::int64_t pp = 1; pp <= n_max / p; pp *= p) ++order;
        it = local.emplace(p, local_coefficients(k, p, X, order)).first;
      }
      value *= (variant == CoefficientVariant::kBetaMinus2 && e >= 3) ? 0.0 : it->second[e];
    }
    table.values[n] = value;
  }
  return table;
}

void write_coefficient_csv(std::ostream& out, const CoefficientTable& table) {
  out << "n,value\n";
  const auto old = out.precision(17);
  for (const std::int64_t n : table.support) out << n << ',' << table.values[n] << '\n';
  out.precision(old);
}

cplx dirichlet_poly_eval(const CoefficientTable& table, const DirichletCharacter& chi, double cutoff) {
  if (cutoff > static_cast<double>(table.n_max)) {
    throw DomainError("dirichlet_poly_eval: cutoff exceeds the table's n_max");
  }
  std::vector<double> w;
  std::vector<std::int32_t> ph;
  for (const std::int64_t n : table.support) {
    if (static_cast<double>(n) > cutoff) break;
    const auto k = chi.phase(n);
    if (!k || table.values[n] == 0.0) continue;
    w.push_back(table.values[n] / std::sqrt(static_cast<double>(n)));
    ph.push_back(*k);
  }
  return kernels::phase_dot(w, ph, chi.group().roots());
}

HybridContext::HybridContext(std::int64_t q, double X, int bump_nodes)
    : q_(q), X_(X), bump_(X, bump_nodes) {
  const double log_x = std::log(X);
  for (int parity = 0; parity < 2; ++parity) {
    double sum = 0.0;
    for (int m = 0; m < 10000; ++m) {
      const double term = bump_.U(cplx((0.5 + parity + 2.0 * m) * log_x, 0.0)).real();
      sum += term;
      if (std::abs(term) < 1e-17 * std::max(1.0, std::abs(sum))) break;
    }
    gamma_tail_[parity] = std::exp(-sum);
  }
  const auto limit = static_cast<std::int64_t>(std::floor(X));
  for (const std::int64_t p : primes_up_to(limit)) {
    std::int64_t n = p;
    for (int j = 1;; ++j) {
      const double nd = static_cast<double>(n);
      const double w = 1.0 / (j * std::sqrt(nd));
      powers_.push_back(n);
      weight_.push_back(w);
      window_weight_.push_back(w * (1.0 - bump_.v(std::exp(std::log(nd) / log_x))));
      if (n > limit / p) break;
      n *= p;
    }
  }
}

cplx HybridContext::p_x(const DirichletCharacter& chi) const {
  cplx p, win;
  smoothed_sums(chi, p, win);
  return p;
}

void HybridContext::smoothed_sums(const DirichletCharacter& chi, cplx& p_value, cplx& window) const {
  if (chi.modulus() != q_) throw DomainError("HybridContext: character has another modulus");
  std::vector<double> w, ww;
  std::vector<std::int32_t> ph;
  w.reserve(powers_.size());
  for (std::size_t i = 0; i < powers_.size(); ++i) {
    const auto k = chi.phase(powers_[i]);
    if (!k) continue;
    w.push_back(weight_[i]);
    ww.push_back(window_weight_[i]);
    ph.push_back(*k);
  }
  const auto& roots = chi.group().roots();
  p_value = std::exp(kernels::phase_dot(w, ph, roots));
  window = std::exp(-kernels::phase_dot(ww, ph, roots));
}

HybridValue z_x_from_ratio(const DirichletCharacter& chi, const HybridContext& ctx, cplx L) {
  if (std::abs(L) <= 1e-12) {
    throw DomainError("z_x_from_ratio: central zero or near-zero, |L(1/2)| <= 1e-12");
  }
  HybridValue out;
  out.L = L;
  ctx.smoothed_sums(chi, out.P_X, out.window);
  out.gamma_tail = ctx.gamma_tail(chi.parity());
  out.Z_X_ratio = L / (out.P_X * out.window * out.gamma_tail);
  out.residual = out.ratio_residual();
  return out;
}

HybridValue z_x_from_ratio(const DirichletCharacter& chi, double X) {
  return z_x_from_ratio(chi, HybridContext(chi.modulus(), X), l_value(chi, 0.5));
}

cplx z_x_from_zeros(const BumpSpec& bump, const ZeroList& zeros) {
  if (zeros.gammas.empty()) throw DomainError("z_x_from_zeros: empty zero list");
  const double log_x = std::log(bump.X());
  cplx sum = 0.0;
  for (const double g : zeros.gammas) sum += bump.U(cplx(0.0, -g * log_x));
  return std::exp(-sum);
}

cplx z_x_from_zeros(const DirichletCharacter& chi, double X, const ZeroList& zeros) {
  if (zeros.q != chi.modulus()) throw DomainError("z_x_from_zeros: zero list belongs to another modulus");
  return z_x_from_zeros(BumpSpec(X), zeros);
}

double hybrid_residual(const DirichletCharacter& chi, double X, const ZeroList& zeros) {
  const cplx L = l_value(chi, 0.5);
  const cplx z = z_x_from_zeros(chi, X, zeros);
  return std::abs(L / (p_x(chi, X) * z) - 1.0);
}

double hybrid_residual(const DirichletCharacter& chi, double X, double T) {
  return hybrid_residual(chi, X, find_zeros(chi, T));
}

void write_hybrid_csv_header(std::ostream& out) {
  out << "q,char_index,X,L_re,L_im,P_re,P_im,Zratio_re,Zratio_im,Zzeros_re,Zzeros_im,gamma_tail,"
         "window_re,window_im,ratio_residual,residual\n";
}

void write_hybrid_csv_row(std::ostream& out, const DirichletCharacter& chi, double X,
                          const HybridValue& v) {
  const auto old = out.precision(17);
  const cplx zz = v.Z_X_zeros.value_or(cplx(NAN, NAN));
  out << chi.modulus() << ',' << chi.index() << ',' << X << ',' << v.L.real() << ',' << v.L.imag()
      << ',' << v.P_X.real() << ',' << v.P_X.imag() << ',' << v.Z_X_ratio.real() << ','
      << v.Z_X_ratio.imag() << ',' << zz.real() << ',' << zz.imag() << ',' << v.gamma_tail << ','
      << v.window.real() << ',' << v.window.imag() << ',' << v.ratio_residual() << ',' << v.residual << '\n';
  out.precision(old);
}

}  // namespace lhybrid

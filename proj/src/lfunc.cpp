#include "lhybrid/lfunc.hpp"

#include <cmath>
#include <optional>
#include <numbers>

#include "lhybrid/arith.hpp"
#include "lhybrid/kernels.hpp"
#include "lhybrid/parallel.hpp"
#include "lfunc_internal.hpp"

namespace lhybrid {
namespace {

constexpr double kPi = std::numbers::pi;

void require_primitive(const DirichletCharacter& chi, const char* what) {
  if (!chi.is_primitive()) throw DomainError(std::string(what) + " requires a primitive character");
}

}  // namespace

HurwitzTable::HurwitzTable(const CharacterGroup& group, cplx s)
    : s_(s), q_(group.modulus()), real_(s.imag() == 0.0) {
  const auto units = group.units();
  re_.reserve(units.size());
  im_.reserve(units.size());
  const double q = static_cast<double>(q_);
  for (const std::int64_t u : units) {
    // For q = 1 the single unit is 0; the term is zeta(s, 1).
    const double a = u == 0 ? 1.0 : static_cast<double>(u) / q;
    // At s = 1 keep the constant term -psi(a) of the Laurent expansion; the
    // poles cancel in any character sum with sum_a chi(a) = 0.
    const cplx z = s == cplx(1.0, 0.0) ? cplx(-digamma(a), 0.0) : hurwitz_zeta(s, a);
    re_.push_back(z.real());
    im_.push_back(real_ ? 0.0 : z.imag());
  }
}

cplx l_value(const DirichletCharacter& chi, const HurwitzTable& table) {
  if (table.modulus() != chi.modulus()) throw DomainError("l_value: table built for another modulus");
  if (table.s() == cplx(1.0, 0.0) && chi.is_principal()) throw DomainError("l_value: pole at s = 1");
  const auto phases = chi.unit_phases();
  const auto& roots = chi.group().roots();
  const cplx sum = table.is_real() ? kernels::phase_dot(table.re(), phases, roots)
                                   : kernels::phase_dot_complex(table.re(), table.im(), phases, roots);
  const double q = static_cast<double>(chi.modulus());
  return std::exp(-table.s() * std::log(q)) * sum;
}

cplx l_value(const DirichletCharacter& chi, cplx s) {
  return l_value(chi, HurwitzTable(chi.group(), s));
}

cplx completed_lambda(const DirichletCharacter& chi, cplx s, const HurwitzTable& table) {
  require_primitive(chi, "completed_lambda");
  if (table.s() != 0.5 + s) throw DomainError("completed_lambda: table built at another point");
  const double q = static_cast<double>(chi.modulus());
  const cplx gamma_arg = 0.5 * (s + 0.5 + static_cast<double>(chi.parity()));
  const cplx factor = std::exp(0.5 * s * std::log(q / kPi) + log_gamma(gamma_arg));
  return factor * l_value(chi, table);
}

cplx completed_lambda(const DirichletCharacter& chi, cplx s) {
  require_primitive(chi, "completed_lambda");
  return completed_lambda(chi, s, HurwitzTable(chi.group(), 0.5 + s));
}

namespace detail {

// eps^{-1/2} with the principal root, computed once per character.
cplx inverse_sqrt_root_number(const DirichletCharacter& chi) {
  return 1.0 / std::sqrt(chi.root_number());
}

HardyValue hardy_rotated(const DirichletCharacter& chi, cplx rotation, double t) {
  const cplx v = rotation * completed_lambda(chi, cplx(0.0, t));
  return {v.real(), v.imag()};
}

}  // namespace detail

HardyValue hardy_z_diagnostic(const DirichletCharacter& chi, double t) {
  require_primitive(chi, "hardy_z");
  return detail::hardy_rotated(chi, detail::inverse_sqrt_root_number(chi), t);
}

double hardy_z(const DirichletCharacter& chi, double t) { return hardy_z_diagnostic(chi, t).value; }

QuadraticFormTable::QuadraticFormTable(std::int64_t q, int parity, double tail_factor)
    : q_(q), parity_(parity) {
  if (q < 1) throw DomainError("QuadraticFormTable: q must be >= 1");
  if (!(tail_factor > 0.0)) throw DomainError("QuadraticFormTable: tail factor must be positive");
  const auto cutoff = static_cast<std::int64_t>(std::floor(tail_factor * static_cast<double>(q)));
  const WeightW w(parity);
  weights_.assign(static_cast<std::size_t>(std::max<std::int64_t>(cutoff, 1)) + 1, 0.0);
  const double scale = kPi / static_cast<double>(q);
  for (std::int64_t n = 1; n < static_cast<std::int64_t>(weights_.size()); ++n) {
    const double nd = static_cast<double>(n);
    weights_[n] = w(scale * nd) / std::sqrt(nd);
  }
}

QuadraticFormValue quadratic_forms(const DirichletCharacter& chi, const QuadraticFormTable& table) {
  require_primitive(chi, "quadratic_forms");
  const std::int64_t q = chi.modulus();
  if (table.modulus() != q || table.parity() != chi.parity()) {
    throw DomainError("quadratic_forms: table does not match the character");
  }
  std::vector<std::int32_t> phase;
  chi.residue_phases(phase);
  const auto& roots = chi.group().roots();
  const std::int32_t m = roots.order();
  const double* cs = roots.cos_data();
  const double* sn = roots.sin_data();

  QuadraticFormValue out;
  out.Z = static_cast<double>(q) / std::ldexp(1.0, omega(q));
  const std::int64_t cutoff = table.cutoff();
  out.cutoff = static_cast<double>(cutoff);
  const auto z_floor = static_cast<std::int64_t>(std::floor(out.Z));

  // Terms grouped by n = ab so the weight is read once per pair.
  double b_re = 0.0, b_im = 0.0, c_re = 0.0, c_im = 0.0;
  for (std::int64_t a = 1; a <= cutoff; ++a) {
    const std::int32_t pa = phase[a % q];
    if (pa < 0) continue;
    const std::int64_t b_max = cutoff / a;
    for (std::int64_t b = 1; b <= b_max; ++b) {
      const std::int32_t pb = phase[b % q];
      if (pb < 0) continue;
      std::int32_t k = pa - pb;
      if (k < 0) k += m;
      const std::int64_t n = a * b;
      const double w = table.weight(n);
      if (n <= z_floor) {
        b_re += w * cs[k];
        b_im += w * sn[k];
        ++out.terms_B;
      } else {
        c_re += w * cs[k];
        c_im += w * sn[k];
        ++out.terms_C;
      }
    }
  }
  out.B = {b_re, b_im};
  out.C = {c_re, c_im};
  out.A = out.B + out.C;
  return out;
}

QuadraticFormValue quadratic_forms(const DirichletCharacter& chi, double tail_factor) {
  return quadratic_forms(chi, QuadraticFormTable(chi.modulus(), chi.parity(), tail_factor));
}

std::vector<cplx> functional_equation_points() { return {{0.3, 0.0}, {0.3, 2.0}, {-0.1, 5.0}}; }

std::vector<LValueCheck> lvalue_checks(const CharacterGroup& group, double tail_factor, unsigned threads) {
  const auto chars = group.primitive_characters();
  const auto points = functional_equation_points();
  const HurwitzTable central(group, 0.5);
  std::vector<HurwitzTable> plus, minus;
  for (const cplx s : points) {
    plus.emplace_back(group, 0.5 + s);
    minus.emplace_back(group, 0.5 - s);
  }
  std::optional<QuadraticFormTable> forms[2];
  for (const auto& chi : chars) {
    if (!forms[chi.parity()]) forms[chi.parity()].emplace(group.modulus(), chi.parity(), tail_factor);
  }
  std::vector<LValueCheck> out(chars.size());
  parallel_for(
      chars.size(),
      [&](std::size_t i) {
        const auto& chi = chars[i];
        LValueCheck& c = out[i];
        c.char_index = chi.index();
        c.parity = chi.parity();
        c.L = l_value(chi, central);
        c.A = quadratic_forms(chi, *forms[chi.parity()]).A;
        const double l2 = std::norm(c.L);
        c.dual_relative = std::abs(2.0 * c.A - l2) / l2;
        const auto bar = chi.conj();
        const cplx eps = chi.root_number();
        for (std::size_t j = 0; j < points.size(); ++j) {
          const cplx lhs = completed_lambda(chi, points[j], plus[j]);
          const cplx rhs = eps * completed_lambda(bar, -points[j], minus[j]);
          c.fe_relative = std::max(c.fe_relative, std::abs(lhs - rhs) / std::abs(lhs));
        }
      },
      threads);
  return out;
}

}  // namespace lhybrid

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "lhybrid/arith.hpp"
#include "lfunc_internal.hpp"

namespace lhybrid {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBisectionTol = 1e-11;

double theta(const DirichletCharacter& chi, double t) {
  const double q = static_cast<double>(chi.modulus());
  const cplx g = log_gamma(cplx(0.5 * (0.5 + chi.parity()), 0.5 * t));
  return 0.5 * t * std::log(q / kPi) + g.imag();
}

}  // namespace

double zero_count_estimate(const DirichletCharacter& chi, double T) {
  return (theta(chi, T) - theta(chi, -T)) / kPi;
}

ZeroList find_zeros(const DirichletCharacter& chi, double T, double step) {
  if (!chi.is_primitive()) throw DomainError("find_zeros requires a primitive character");
  if (!(T > 0.0)) throw DomainError("find_zeros: T must be positive");
  const double q = static_cast<double>(chi.modulus());
  if (step <= 0.0) {
    const double density = std::log(std::max(q * T / (2.0 * kPi), std::exp(1.0)));
    step = std::min(0.1, 0.25 * 2.0 * kPi / density);
  }

  ZeroList out;
  out.q = chi.modulus();
  out.char_index = chi.index();
  out.height = T;
  out.step = step;

  const cplx rotation = detail::inverse_sqrt_root_number(chi);
  auto f = [&](double t) { return detail::hardy_rotated(chi, rotation, t).value; };

  const auto count = static_cast<std::int64_t>(std::ceil(2.0 * T / step));
  double t_prev = -T;
  double f_prev = f(t_prev);
  for (std::int64_t i = 1; i <= count; ++i) {
    const double t = std::min(T, -T + static_cast<double>(i) * step);
    const double ft = f(t);
    if (f_prev == 0.0) {
      out.gammas.push_back(t_prev);
    } else if ((f_prev < 0.0) != (ft < 0.0) && ft != 0.0) {
      double lo = t_prev, hi = t, flo = f_prev;
      while (hi - lo > kBisectionTol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      out.gammas.push_back(0.5 * (lo + hi));
    }
    t_prev = t;
    f_prev = ft;
  }
  if (f_prev == 0.0) out.gammas.push_back(t_prev);

  out.expected_count = zero_count_estimate(chi, T);
  const double gap = std::abs(static_cast<double>(out.gammas.size()) - out.expected_count);
  if (gap > 2.5) {
    out.warning = true;
    std::ostringstream msg;
    msg << "zero count " << out.gammas.size() << " vs estimate " << out.expected_count
        << "; scan step may be too coarse";
    out.status = msg.str();
  }
  return out;
}

void write_zero_csv(std::ostream& out, const ZeroList& zeros, bool header) {
  if (header) out << "q,char_index,gamma\n";
  const auto old = out.precision(17);
  for (const double g : zeros.gammas) out << zeros.q << ',' << zeros.char_index << ',' << g << '\n';
  out.precision(old);
}

ZeroList read_zero_csv(std::istream& in) {
  ZeroList out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (first && line.rfind("q,", 0) == 0) {
      first = false;
      continue;
    }
    first = false;
    std::istringstream row(line);
    std::string a, b, c;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c)) {
      throw std::runtime_error("zero CSV: malformed row '" + line + "'");
    }
    try {
      out.q = std::stoll(a);
      out.char_index = static_cast<std::size_t>(std::stoull(b));
      out.gammas.push_back(std::stod(c));
    } catch (const std::exception&) {
      throw std::runtime_error("zero CSV: malformed row '" + line + "'");
    }
  }
  if (!std::is_sorted(out.gammas.begin(), out.gammas.end())) {
    throw std::runtime_error("zero CSV: ordinates not ascending");
  }
  return out;
}

}  // namespace lhybrid

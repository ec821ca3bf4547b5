#include <cmath>
#include <numbers>

#include "lhybrid/arith.hpp"
#include "lhybrid/specfun.hpp"

namespace lhybrid {
namespace {

constexpr double kPi = std::numbers::pi;

// Tanh-sinh rule on [a, b]. The callback receives the node together with its
// distances to both endpoints, computed without cancellation.
template <typename F>
double tanh_sinh(double a, double b, F&& f, double step = 1.0 / 32.0) {
  const double width = b - a;
  const int half_count = static_cast<int>(std::ceil(3.6 / step));
  double total = 0.0;
  for (int k = -half_count; k <= half_count; ++k) {
    const double tk = k * step;
    const double y = 0.5 * kPi * std::sinh(tk);
    const double da = width / (1.0 + std::exp(-2.0 * y));
    const double db = width / (1.0 + std::exp(2.0 * y));
    const double cy = std::cosh(y);
    const double weight = width * step * 0.5 * kPi * std::cosh(tk) / (2.0 * cy * cy);
    if (weight == 0.0 || da == 0.0 || db == 0.0) continue;
    total += weight * f(a + da, da, db);
  }
  return total;
}

// exp(-1 / ((1 - t)(1 + t))) given both factors directly.
double bump_shape(double one_minus_t, double one_plus_t) {
  if (one_minus_t <= 0.0 || one_plus_t <= 0.0) return 0.0;
  return std::exp(-1.0 / (one_minus_t * one_plus_t));
}

}  // namespace

BumpSpec::BumpSpec(double X, int nodes) : X_(X), lo_(std::exp(1.0 - 1.0 / X)), hi_(std::exp(1.0)) {
  if (!(X >= 2.0)) throw DomainError("BumpSpec: X must be >= 2");
  if (nodes < 2) throw DomainError("BumpSpec: need at least two quadrature nodes");
  const double half = 0.5 * (hi_ - lo_);
  const double mass_standard =
      tanh_sinh(-1.0, 1.0, [](double, double da, double db) { return bump_shape(db, da); });
  norm_ = 1.0 / (half * mass_standard);

  const QuadratureRule rule = gauss_legendre(nodes);
  const double mid = 0.5 * (hi_ + lo_);
  for (int j = 0; j < nodes; ++j) {
    const double t = rule.nodes[j];
    const double x = mid + half * t;
    x_.push_back(x);
    w_.push_back(rule.weights[j] * half * norm_ * bump_shape(1.0 - t, 1.0 + t));
    logx_.push_back(std::log(x));
  }
}

double BumpSpec::u(double x) const {
  if (x <= lo_ || x >= hi_) return 0.0;
  const double half = 0.5 * (hi_ - lo_);
  // 1 - t and 1 + t from the distances to the endpoints.
  return norm_ * bump_shape((hi_ - x) / half, (x - lo_) / half);
}

double BumpSpec::v(double t) const {
  if (t <= lo_) return 1.0;
  if (t >= hi_) return 0.0;
  const double half = 0.5 * (hi_ - lo_);
  const double a = (t - lo_) / half - 1.0;  // standardized lower limit in (-1, 1)
  const double tail = tanh_sinh(a, 1.0, [a](double, double da, double db) {
    return bump_shape(db, (a + 1.0) + da);
  });
  return norm_ * half * tail;
}

cplx BumpSpec::U(cplx z) const {
  if (z == cplx(0.0, 0.0)) throw DomainError("U: z = 0 is a logarithmic singularity");
  cplx total = 0.0;
  for (std::size_t j = 0; j < x_.size(); ++j) {
    if (w_[j] == 0.0) continue;
    total += w_[j] * exp_integral_e1(z * logx_[j]);
  }
  return total;
}

double BumpSpec::quadrature_mass() const {
  double total = 0.0;
  for (const double w : w_) total += w;
  return total;
}

WeightW::WeightW(int parity, double c, double height) : parity_(parity), c_(c) {
  if (parity != 0 && parity != 1) throw DomainError("WeightW: parity must be 0 or 1");
  const double pole = 0.5 + parity;
  if (c == 0.0 || c <= -pole) throw DomainError("WeightW: line must avoid s = 0 and the gamma poles");
  const double strip = std::min(std::abs(c), c + pole);
  // Trapezoid error ~ exp(-2 pi d / h) x^{+-d}; sized for |log x| <= 40.
  step_ = 2.0 * kPi * strip / (45.0 + 40.0 * strip);
  const auto count = static_cast<std::size_t>(std::ceil(height / step_));
  const cplx norm = log_gamma(cplx(0.5 * pole, 0.0));
  coeff_.reserve(count + 1);
  for (std::size_t j = 0; j <= count; ++j) {
    const cplx s(c, static_cast<double>(j) * step_);
    const cplx g = std::exp(2.0 * (log_gamma(0.5 * (s + pole)) - norm));
    coeff_.push_back(g / s);
  }
}

double WeightW::operator()(double x) const {
  if (!(x > 0.0)) throw DomainError("W: x must be positive");
  const double lx = std::log(x);
  cplx acc = 0.5 * coeff_[0];
  const cplx rot = std::polar(1.0, -step_ * lx);
  cplx phase = 1.0;
  for (std::size_t j = 1; j < coeff_.size(); ++j) {
    if (j % 64 == 0) {
      phase = std::polar(1.0, -static_cast<double>(j) * step_ * lx);
    } else {
      phase *= rot;
    }
    acc += coeff_[j] * phase;
  }
  const double value = step_ / kPi * std::exp(-c_ * lx) * acc.real();
  return c_ < 0.0 ? value + 1.0 : value;
}

double weight_W(int parity, double x, double c) { return WeightW(parity, c)(x); }

}  // namespace lhybrid

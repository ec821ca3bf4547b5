#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "lhybrid/lfunc.hpp"
#include "oracles.hpp"

using namespace lhybrid;

namespace {

constexpr double kPi = std::numbers::pi;

DirichletCharacter chi_minus4() { return CharacterGroup::create(4)->character(1); }

}  // namespace

TEST_SUITE("lfunc") {
  TEST_CASE("L-values") {
    const auto chi = chi_minus4();
    CHECK(std::abs(l_value(chi, 1.0) - cplx(kPi / 4, 0)) < 1e-12);
    CHECK(std::abs(l_value(chi, 0.5) - oracle::kLHalfChiMinus4) < 1e-12);
    CHECK_THROWS_AS(l_value(CharacterGroup::create(7)->character(0), 1.0), DomainError);
    CHECK(std::abs(l_value(CharacterGroup::create(1)->character(0), 2.0) - kPi * kPi / 6) < 1e-13);
    const auto g = CharacterGroup::create(13);
    for (const auto& c : g->primitive_characters()) {
      for (const cplx s : {cplx(0.5, 3), cplx(0.7, -10), cplx(2, 1)}) {
        REQUIRE(std::abs(std::conj(l_value(c, s)) - l_value(c.conj(), std::conj(s))) < 1e-12);
      }
    }
  }

  TEST_CASE("completed Lambda and the functional equation") {
    for (std::int64_t q = 3; q <= 50; ++q) {
      const auto g = CharacterGroup::create(q);
      for (const auto& chi : g->primitive_characters()) {
        for (const cplx s : functional_equation_points()) {
          const cplx lhs = completed_lambda(chi, s);
          const cplx rhs = chi.root_number() * completed_lambda(chi.conj(), -s);
          REQUIRE(std::abs(lhs - rhs) / std::abs(lhs) < 1e-8);
        }
        const cplx at0 = completed_lambda(chi, 0.0);
        const cplx plug = std::exp(log_gamma((0.5 + chi.parity()) / 2)) * l_value(chi, 0.5);
        REQUIRE(std::abs(at0 - plug) < 1e-13 * std::abs(plug) + 1e-15);
        REQUIRE(std::abs((at0 / std::sqrt(chi.root_number())).imag()) < 1e-8);
      }
    }
    CHECK_THROWS_AS(completed_lambda(CharacterGroup::create(9)->character(0), 0.0), DomainError);
  }

  TEST_CASE("Hardy rotation") {
    for (std::int64_t q = 3; q <= 50; q += 1) {
      const auto g = CharacterGroup::create(q);
      for (const auto& chi : g->primitive_characters()) {
        for (double t = -30; t <= 30; t += 2.5) {
          const HardyValue h = hardy_z_diagnostic(chi, t);
          REQUIRE(std::abs(h.imag) < 1e-8 * std::max(1.0, std::abs(h.value)));
        }
      }
    }
    const auto chi = chi_minus4();
    CHECK(hardy_z(chi, 6.0) * hardy_z(chi, 6.1) < 0);
    const auto chi3 = CharacterGroup::create(3)->character(1);
    for (double t = 0.5; t < 20; t += 1.3) {
      CHECK(std::abs(std::abs(hardy_z(chi3, -t)) - std::abs(hardy_z(chi3, t))) < 1e-10);
    }
    for (double t : {1.0, 7.5, 20.0}) {
      const double z = hardy_z(chi, t);
      const double lhs = z * z;
      const double gamma_abs = std::exp(log_gamma(cplx(0.75, t / 2)).real());
      const double rhs = std::norm(l_value(chi, cplx(0.5, t))) * gamma_abs * gamma_abs;
      CHECK(std::abs(lhs - rhs) <= 1e-8 * rhs);
    }
    CHECK_THROWS_AS(hardy_z(CharacterGroup::create(9)->character(0), 1.0), DomainError);
  }

  TEST_CASE("zeros") {
    const auto chi = chi_minus4();
    const ZeroList z = find_zeros(chi, 30);
    CHECK_FALSE(z.warning);
    std::size_t positive = 0;
    double first = 1e9;
    for (const double g : z.gammas) {
      if (g > 0) {
        ++positive;
        first = std::min(first, g);
      }
      REQUIRE(std::abs(hardy_z(chi, g)) < 1e-8);
    }
    CHECK(std::abs(first - oracle::kFirstZeroChiMinus4) < 1e-9);
    const double T = 30;
    const double count = T / (2 * kPi) * std::log(4 * T / (2 * kPi * std::numbers::e));
    CHECK(std::abs(static_cast<double>(positive) - count) <= 2.0);
    for (std::size_t i = 1; i < z.gammas.size(); ++i) REQUIRE(z.gammas[i] - z.gammas[i - 1] > 1e-9);

    const auto g7 = CharacterGroup::create(7);
    const auto c = g7->character(1);
    const ZeroList a = find_zeros(c, 40);
    const ZeroList b = find_zeros(c.conj(), 40);
    REQUIRE(a.gammas.size() == b.gammas.size());
    for (std::size_t i = 0; i < a.gammas.size(); ++i) {
      REQUIRE(std::abs(a.gammas[i] + b.gammas[b.gammas.size() - 1 - i]) < 1e-8);
    }
    const ZeroList fine = find_zeros(c, 40, 0.5 * a.step);
    REQUIRE(fine.gammas.size() == a.gammas.size());
    for (std::size_t i = 0; i < a.gammas.size(); ++i) REQUIRE(std::abs(fine.gammas[i] - a.gammas[i]) < 1e-8);
    CHECK(std::abs(static_cast<double>(a.gammas.size()) - zero_count_estimate(c, 40)) <= 2.5);

    // A scan step far too coarse misses zeros and is reported.
    const ZeroList coarse = find_zeros(CharacterGroup::create(101)->character(5), 40, 1.0);
    CHECK(coarse.warning);
    CHECK(coarse.status != "ok");
  }

  TEST_CASE("zero CSV round trip") {
    const auto chi = chi_minus4();
    const ZeroList z = find_zeros(chi, 20);
    std::stringstream buf;
    buf << "# comment\n";
    write_zero_csv(buf, z);
    const ZeroList back = read_zero_csv(buf);
    CHECK(back.q == 4);
    CHECK(back.char_index == 1);
    CHECK(back.gammas == z.gammas);
    std::stringstream bad("q,char_index,gamma\n4,1,2.0\n4,1,1.0\n");
    CHECK_THROWS(read_zero_csv(bad));
    std::stringstream junk("4,1,abc\n");
    CHECK_THROWS(read_zero_csv(junk));
  }

  TEST_CASE("quadratic forms") {
    for (const std::int64_t q : {5, 11, 37, 101}) {
      const auto g = CharacterGroup::create(q);
      for (const auto& check : lvalue_checks(*g)) {
        REQUIRE(check.dual_relative < 1e-6);
        REQUIRE(check.fe_relative < 1e-8);
        REQUIRE(std::abs(check.A.imag()) < 1e-8);
      }
    }
    const auto g = CharacterGroup::create(37);
    for (const auto& chi : g->primitive_characters()) {
      const QuadraticFormValue v = quadratic_forms(chi, 30);
      REQUIRE(std::abs(v.A - (v.B + v.C)) < 1e-10);
      REQUIRE(v.Z == doctest::Approx(37.0 / 2));
      const QuadraticFormValue w = quadratic_forms(chi, 60);
      REQUIRE(std::abs(w.A - v.A) < 1e-10);
    }
    CHECK_THROWS_AS(quadratic_forms(CharacterGroup::create(9)->character(0), 30), DomainError);
  }
}

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "lhybrid/moments.hpp"
#include "lhybrid/parallel.hpp"

using namespace lhybrid;

namespace {

constexpr double kPi = std::numbers::pi;
const double kEg = std::exp(kEulerGamma);

// sum_m d_3(p^m)^2 / p^m with d_3(p^m) = (m + 1)(m + 2) / 2
double local3(double p) {
  double s = 0, pm = 1;
  for (int m = 0; m < 200; ++m, pm /= p) {
    const double d = 0.5 * (m + 1) * (m + 2);
    s += d * d * pm;
  }
  return s;
}

}  // namespace

TEST_SUITE("moments") {
  TEST_CASE("L moment by hand") {
    const auto chars = CharacterGroup::create(5)->primitive_characters();
    REQUIRE(chars.size() == 3);
    for (const double k : {0.5, 1.0, 2.0}) {
      double direct = 0;
      for (const auto& chi : chars) direct += std::pow(std::abs(l_value(chi, 0.5)), 2 * k);
      direct /= 3;
      const MomentReport r = empirical_moment(5, k, MomentKind::kL);
      CHECK(r.empirical == doctest::Approx(direct).epsilon(1e-13));
      CHECK(r.characters == 3);
      CHECK(r.excluded == 0);
    }
    CHECK_THROWS_AS(empirical_moment(2, 1, MomentKind::kL), DomainError);
    CHECK_THROWS_AS(empirical_moment(7, 1, MomentKind::kP), DomainError);
    MomentOptions o;
    o.X = 10;
    CHECK_THROWS_AS(empirical_moment(7, 1, MomentKind::kZZeros, o), DomainError);
  }

  TEST_CASE("predicted L moment") {
    for (const std::int64_t q : {5, 12, 101, 1009, 10007, 30030}) {
      const double lq = std::log(static_cast<double>(q));
      CHECK(predicted_moment_L(q, 1) ==
            doctest::Approx(static_cast<double>(euler_phi(q)) / q * lq).epsilon(1e-12));
      double local = 1;
      for (const auto& [p, e] : factorize(q)) {
        const double x = 1.0 / static_cast<double>(p);
        local *= std::pow(1 - x, 3) / (1 + x);
      }
      CHECK(predicted_moment_L(q, 2) ==
            doctest::Approx(local * std::pow(lq, 4) / (2 * kPi * kPi)).epsilon(1e-9));
    }
    CHECK(barnes_ratio(3) == doctest::Approx(42.0 / 362880.0).epsilon(1e-14));
    CHECK(barnes_ratio(3) == doctest::Approx(1.0 / 8640.0).epsilon(1e-14));
    const double lq = std::log(10007.0);
    CHECK(predicted_moment_L(10007, 3) ==
          doctest::Approx(arithmetic_factor_a(3) / 8640.0 / local3(10007.0) * std::pow(lq, 9))
              .epsilon(1e-10));
    CHECK_THROWS_AS(predicted_moment_L(101, 5), DomainError);
  }

  TEST_CASE("predicted P and Z moments") {
    for (const double X : {5.0, 20.0, 100.0}) {
      const auto p1 = predicted_moment_P(10007, 1, X);
      CHECK(p1.restricted == doctest::Approx(kEg * std::log(X)).epsilon(1e-12));
      // the full product also runs over p = q itself
      const double iq = 1.0 / 10007;
      CHECK(p1.full == doctest::Approx(p1.restricted * (1 - iq)).epsilon(1e-12));
      const auto p2 = predicted_moment_P(10007, 2, X);
      CHECK(p2.restricted == doctest::Approx(6 / (kPi * kPi) * std::pow(kEg * std::log(X), 4)).epsilon(1e-8));

      const double ratio = std::log(10007.0) / (kEg * std::log(X));
      const auto z1 = predicted_moment_Z(10007, 1, X);
      REQUIRE(z1.theorem);
      CHECK(*z1.theorem == doctest::Approx(ratio * (1 - iq)).epsilon(1e-12));
      CHECK(z1.conjecture == doctest::Approx(ratio).epsilon(1e-12));
      const auto z2 = predicted_moment_Z(10007, 2, X);
      REQUIRE(z2.theorem);
      CHECK(*z2.theorem ==
            doctest::Approx(std::pow(1 - iq, 3) / (1 + iq) * std::pow(ratio, 4) / 12).epsilon(1e-12));
      CHECK(z2.conjecture == doctest::Approx(std::pow(ratio, 4) / 12).epsilon(1e-12));
      const auto z3 = predicted_moment_Z(10007, 3, X);
      CHECK(z3.flagged);
      CHECK_FALSE(z3.theorem);
    }
    CHECK(barnes_ratio(2) == doctest::Approx(1.0 / 12).epsilon(1e-14));
    // restricted and full differ by the local factors at p | q, p > X
    const std::int64_t q = 2 * 3 * 37 * 41;
    for (const double k : {1.0, 2.0, 0.5}) {
      const auto p = predicted_moment_P(q, k, 20);
      const double tail = 1.0 / (local_divisor_square_sum(k, 37) * local_divisor_square_sum(k, 41));
      CHECK(p.full == doctest::Approx(p.restricted * tail).epsilon(1e-12));
    }
    // the Z theorem forms carry the large-prime product
    const auto z = predicted_moment_Z(q, 1, 20);
    CHECK(*z.theorem == doctest::Approx(z.conjecture * (1 - 1.0 / 37) * (1 - 1.0 / 41)).epsilon(1e-12));
    CHECK_THROWS_AS(predicted_moment_P(101, 1, 1.5), DomainError);
    CHECK_THROWS_AS(predicted_moment_Z(101, 1, 1.5), DomainError);
  }

  TEST_CASE("sweep symmetries") {
    MomentOptions o;
    o.X = 10;
    const CharacterSweep s = sweep_characters(101, MomentKind::kPZSplit, o);
    std::size_t checked = 0;
    for (std::size_t i = 0; i < s.characters.size(); ++i) {
      const auto c = s.characters[i].conj();
      for (std::size_t j = 0; j < s.characters.size(); ++j) {
        if (s.characters[j].index() != c.index()) continue;
        REQUIRE(std::abs(std::abs(s.L[i]) - std::abs(s.L[j])) < 1e-12);
        REQUIRE(std::abs(std::abs(s.P[i]) - std::abs(s.P[j])) < 1e-12);
        REQUIRE(std::abs(std::abs(s.Z_ratio[i]) - std::abs(s.Z_ratio[j])) < 1e-10);
        ++checked;
      }
    }
    CHECK(checked == s.characters.size());
  }

  TEST_CASE("reduction order") {
    MomentOptions o;
    o.X = 20;
    o.keep_samples = true;
    for (const MomentKind kind : {MomentKind::kL, MomentKind::kP, MomentKind::kZRatio}) {
      const MomentReport r = empirical_moment(1009, 1, kind, o);
      REQUIRE(r.samples.size() == r.characters);
      CHECK(r.characters + r.excluded == static_cast<std::size_t>(phi_star(1009)));
      for (const double v : r.samples) REQUIRE(v >= 0);
      std::mt19937_64 rng(7);
      for (int trial = 0; trial < 5; ++trial) {
        auto shuffled = r.samples;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const double m = pairwise_sum(shuffled) / static_cast<double>(shuffled.size());
        CHECK(std::abs(m - r.empirical) <= 1e-12 * r.empirical);
      }
      // thread count does not change a single bit
      MomentOptions o1 = o, o8 = o;
      o1.threads = 1;
      o8.threads = 8;
      CHECK(empirical_moment(1009, 1, kind, o1).empirical == empirical_moment(1009, 1, kind, o8).empirical);
    }
  }

  TEST_CASE("splitting check") {
    const MomentReport r = splitting_check(101, 1, 2.1);
    REQUIRE(r.find("M(P)M(Z_ratio)"));
    CHECK(std::isfinite(r.find("M(P)M(Z_ratio)")->ratio));
    CHECK(r.which == MomentKind::kPZSplit);
    MomentOptions o;
    o.zero_height = 30;
    const MomentReport z = splitting_check(11, 1, 5, o);
    REQUIRE(z.find("M(P)M(Z_zeros)"));
    CHECK(std::isfinite(z.find("M(P)M(Z_zeros)")->ratio));
  }

  TEST_CASE("diagonal and off-diagonal") {
    const DiagonalReport d = diagonal_offdiagonal(5, 1, 20, 2000);
    const auto t = coefficient_table(1, 20, 2000);
    double direct = 0;
    const auto chars = CharacterGroup::create(5)->primitive_characters();
    for (const auto& chi : chars) {
      cplx s = 0;
      for (const auto n : t.support) s += t(n) * chi(n) / std::sqrt(static_cast<double>(n));
      direct += std::norm(s);
    }
    direct /= static_cast<double>(chars.size());
    CHECK(d.T1 + d.T2 == doctest::Approx(direct).epsilon(1e-12));
    double t1 = 0;
    for (const auto n : t.support) {
      if (n % 5 != 0) t1 += t(n) * t(n) / static_cast<double>(n);
    }
    CHECK(d.T1 == doctest::Approx(t1).epsilon(1e-12));
    CHECK_THROWS_AS(diagonal_offdiagonal(2, 1, 20, 100), DomainError);
  }

  TEST_CASE("regime warning and serialization") {
    CHECK(regime_warning(10007, 20) == std::nullopt);
    CHECK(regime_warning(101, 50).has_value());
    CHECK(parse_moment_kind("Z") == MomentKind::kZRatio);
    CHECK_THROWS_AS(parse_moment_kind("Q"), DomainError);
    MomentOptions o;
    o.X = 20;
    const MomentReport r = empirical_moment(101, 1, MomentKind::kP, o);
    std::ostringstream csv;
    write_moment_csv_header(csv);
    write_moment_csv_rows(csv, r);
    std::istringstream in(csv.str());
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
      CHECK(std::count(line.begin(), line.end(), ',') == 9);
      ++rows;
    }
    CHECK(rows == 1 + static_cast<int>(r.predictions.size()));
    CHECK(moment_report_json(r).find("\"euler_restricted\"") != std::string::npos);
  }
}

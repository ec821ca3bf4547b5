#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "lhybrid/cache.hpp"
#include "lhybrid/config.hpp"
#include "lhybrid/tolerances.hpp"

using namespace lhybrid;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("lhybrid-test-" + std::to_string(::getpid()) + "-" +
                                        std::to_string(counter++));
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static inline int counter = 0;
};

void flip_byte(const fs::path& p, std::size_t offset) {
  std::fstream f(p, std::ios::in | std::ios::out | std::ios::binary);
  f.seekg(static_cast<std::streamoff>(offset));
  char c = 0;
  f.get(c);
  f.seekp(static_cast<std::streamoff>(offset));
  f.put(static_cast<char>(c ^ 0x5a));
}

FlatConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_flat_config(in, "test");
}

}  // namespace

TEST_SUITE("cache") {
  TEST_CASE("coefficient serialization") {
    for (const auto variant : {CoefficientVariant::kAlpha, CoefficientVariant::kBetaMinus2}) {
      const double k = variant == CoefficientVariant::kAlpha ? 1.5 : -2.0;
      const auto t = coefficient_table(k, 20, 5000, variant);
      const auto r = deserialize_coefficients(serialize_coefficients(t));
      CHECK(r.k == t.k);
      CHECK(r.X == t.X);
      CHECK(r.n_max == t.n_max);
      CHECK(r.variant == t.variant);
      CHECK(r.support == t.support);
      CHECK(r.values == t.values);
    }
    std::string bytes = serialize_coefficients(coefficient_table(1, 10, 100));
    CHECK_THROWS(deserialize_coefficients(bytes.substr(0, bytes.size() - 3)));
    bytes[0] = 'X';
    CHECK_THROWS(deserialize_coefficients(bytes));
  }

  TEST_CASE("round trips and hits") {
    TempDir tmp;
    const auto g = CharacterGroup::create(101);
    const auto chi = g->primitive_characters()[7];
    {
      Cache c(tmp.path);
      CHECK(fs::is_directory(tmp.path));
      c.character_group(101);
      c.zeros(chi, 20);
      c.coefficients(2, 20, 3000);
      CHECK(c.hits() == 0);
    }
    Cache c(tmp.path);
    const auto g2 = c.character_group(101);
    CHECK(g2->modulus() == 101);
    CHECK(g2->primitive_characters()[7](2) == chi(2));
    const ZeroList z = c.zeros(chi, 20);
    const ZeroList direct = find_zeros(chi, 20);
    CHECK(z.gammas == direct.gammas);
    CHECK(z.status == direct.status);
    CHECK(z.expected_count == direct.expected_count);
    const auto t = c.coefficients(2, 20, 3000);
    CHECK(t.values == coefficient_table(2, 20, 3000).values);
    CHECK(c.hits() == 3);
    CHECK(c.rebuilds() == 0);
    // distinct parameters, distinct entries
    CHECK(Cache::zeros_key(101, 7, 20, 0) != Cache::zeros_key(101, 7, 20, 0.05));
    CHECK(Cache::coefficient_key(2, 20, 3000, CoefficientVariant::kAlpha) !=
          Cache::coefficient_key(2, 20, 3001, CoefficientVariant::kAlpha));
  }

  TEST_CASE("corrupt entries are rebuilt") {
    TempDir tmp;
    std::vector<std::string> warnings;
    const auto sink = [&](const std::string& m) { warnings.push_back(m); };
    {
      Cache c(tmp.path, sink);
      c.coefficients(1, 20, 2000);
      c.character_group(12);
    }
    Cache c(tmp.path, sink);
    const fs::path cp = c.entry_path("coef", Cache::coefficient_key(1, 20, 2000, CoefficientVariant::kAlpha));
    REQUIRE(fs::exists(cp));
    flip_byte(cp, 40);
    const fs::path gp = c.entry_path("chars", Cache::group_key(12));
    REQUIRE(fs::exists(gp));
    fs::resize_file(gp, fs::file_size(gp) / 2);
    CHECK(c.coefficients(1, 20, 2000).values == coefficient_table(1, 20, 2000).values);
    CHECK(c.character_group(12)->phi() == 4);
    CHECK(c.rebuilds() == 2);
    CHECK(warnings.size() == 2);
    // rewritten entries load cleanly
    Cache again(tmp.path, sink);
    again.coefficients(1, 20, 2000);
    again.character_group(12);
    CHECK(again.hits() == 2);
    CHECK(again.rebuilds() == 0);
  }

  TEST_CASE("concurrent writers") {
    TempDir tmp;
    std::vector<std::thread> workers;
    for (int i = 0; i < 6; ++i) {
      workers.emplace_back([&] {
        Cache c(tmp.path, [](const std::string&) {});
        c.coefficients(2, 30, 20000);
      });
    }
    for (auto& w : workers) w.join();
    Cache c(tmp.path);
    c.coefficients(2, 30, 20000);
    CHECK(c.hits() == 1);
    for (const auto& e : fs::directory_iterator(tmp.path)) {
      CHECK(e.path().filename().string().find(".tmp") == std::string::npos);
    }
  }
}

TEST_SUITE("config") {
  TEST_CASE("flat config") {
    const FlatConfig c = parse("# header\ncommand = moment\nq = 1009, 10007  # two moduli\n\nX=20\n");
    CHECK(c.values.at("command") == std::vector<std::string>{"moment"});
    CHECK(c.values.at("q") == std::vector<std::string>{"1009", "10007"});
    CHECK(c.values.at("X") == std::vector<std::string>{"20"});
    CHECK(c.lines.at("X") == 5);
    CHECK(c.has("q"));
    CHECK_FALSE(c.has("k"));
    CHECK_THROWS_AS(parse("q = 1\nq = 2\n"), ConfigError);
    CHECK_THROWS_AS(parse("q = 1,,2\n"), ConfigError);
    CHECK_THROWS_AS(parse("just words\n"), ConfigError);
    CHECK_THROWS_AS(load_flat_config("/nonexistent/lhybrid.cfg"), ConfigError);
  }

  TEST_CASE("element parsers") {
    CHECK(parse_int("1009", "q[0]") == 1009);
    CHECK(parse_int("-3", "k") == -3);
    CHECK(parse_real("2.5e1", "X") == 25.0);
    try {
      parse_int("10x", "q[1]");
      FAIL("no throw");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("q[1]") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_int("", "q"), ConfigError);
    CHECK_THROWS_AS(parse_real("abc", "X"), ConfigError);
    CHECK_THROWS_AS(parse_int("99999999999999999999", "q"), ConfigError);
  }

  TEST_CASE("tolerance registry") {
    const auto t = ToleranceRegistry::defaults();
    CHECK(t.band("moment.L.k1") == std::pair<double, double>{0.80, 1.25});
    CHECK(t.in_band("moment.P.k1", 1.0));
    CHECK_FALSE(t.in_band("moment.P.k1", 1.2));
    CHECK(t.get("cue.stderr_units") == 4);
    CHECK_THROWS(t.get("no.such.key"));
    TempDir tmp;
    fs::create_directories(tmp.path);
    const fs::path p = tmp.path / "tol.cfg";
    std::ofstream(p) << "moment.L.k1.hi = 1.5\n";
    const auto o = ToleranceRegistry::load(p.string());
    CHECK(o.band("moment.L.k1").second == 1.5);
    CHECK(o.get("dual.relative") == t.get("dual.relative"));
    std::ofstream(p) << "moment.L.k9.hi = 1.5\n";
    CHECK_THROWS_AS(ToleranceRegistry::load(p.string()), ConfigError);
  }
}

#include "lhybrid/chars.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <istream>
#include <numbers>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace lhybrid {
namespace {

// Moduli here never exceed 10^6, so the products fit in 64 bits.
std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t mod) {
  std::int64_t result = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) result = result * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return result;
}

std::int64_t primitive_root_mod_prime(std::int64_t p) {
  if (p == 2) return 1;
  const auto factors = factorize(p - 1);
  for (std::int64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (const auto& pe : factors) {
      if (mod_pow(g, (p - 1) / pe.prime, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("no primitive root found");
}

std::int64_t positive_mod(std::int64_t a, std::int64_t m) {
  a %= m;
  return a < 0 ? a + m : a;
}

std::vector<CyclicComponent> build_layout(std::int64_t q) {
  if (q < 1) throw DomainError("character_group: modulus must be >= 1, got " + std::to_string(q));
  if (q > 1'000'000) throw DomainError("character_group: modulus above 1e6 is not supported");
  std::vector<CyclicComponent> layout;
  for (const auto& [p, e] : factorize(q)) {
    std::int64_t pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    if (p == 2) {
      if (e == 1) continue;
      layout.push_back({2, e, pe, pe - 1, 2, true});
      if (e >= 3) layout.push_back({2, e, pe, 5, static_cast<std::int32_t>(pe / 4), false});
      continue;
    }
    std::int64_t g = primitive_root_mod_prime(p);
    if (e >= 2 && mod_pow(g, p - 1, p * p) == 1) g += p;
    layout.push_back({p, e, pe, g, static_cast<std::int32_t>(pe / p * (p - 1)), false});
  }
  return layout;
}

}  // namespace

std::shared_ptr<const CharacterGroup> CharacterGroup::create(std::int64_t q) {
  return std::shared_ptr<const CharacterGroup>(new CharacterGroup(q));
}

namespace {
std::int32_t group_exponent(std::span<const CyclicComponent> comps) {
  std::int64_t m = 1;
  for (const auto& c : comps) m = std::lcm(m, static_cast<std::int64_t>(c.order));
  return static_cast<std::int32_t>(m);
}
}  // namespace

CharacterGroup::CharacterGroup(std::int64_t q, std::vector<CyclicComponent> comps,
                               std::vector<std::int32_t> log_matrix)
    : q_(q), exponent_(group_exponent(comps)), components_(std::move(comps)),
      log_matrix_(std::move(log_matrix)), roots_(exponent_) {
  finish_setup();
}

CharacterGroup::CharacterGroup(std::int64_t q)
    : q_(q), exponent_(1), components_(build_layout(q)), roots_(group_exponent(components_)) {
  exponent_ = roots_.order();
  const std::size_t ncomp = components_.size();
  std::vector<std::int64_t> units;
  for (std::int64_t r = 0; r < q; ++r) {
    if (std::gcd(r, q) == 1) units.push_back(r);
  }

  log_matrix_.assign(static_cast<std::size_t>(q) * ncomp, -1);
  for (std::size_t i = 0; i < ncomp; ++i) {
    const auto& c = components_[i];
    // Discrete-log table over residues mod the component modulus.
    std::vector<std::int32_t> local(static_cast<std::size_t>(c.modulus), -1);
    if (c.is_sign) {
      for (std::int64_t r = 1; r < c.modulus; r += 2) local[r] = (r % 4 == 1) ? 0 : 1;
    } else if (c.prime == 2) {
      std::int64_t x = 1;
      for (std::int32_t j = 0; j < c.order; ++j) {
        local[x] = j;
        local[c.modulus - x] = j;  // -5^j shares the <5> coordinate
        x = x * 5 % c.modulus;
      }
    } else {
      std::int64_t x = 1;
      for (std::int32_t j = 0; j < c.order; ++j) {
        local[x] = j;
        x = x * c.generator % c.modulus;
      }
    }
    for (const std::int64_t r : units) log_matrix_[r * ncomp + i] = local[r % c.modulus];
  }
  finish_setup();
}

void CharacterGroup::finish_setup() {
  for (const auto& c : components_) stride_.push_back(exponent_ / c.order);
  for (std::int64_t r = 0; r < q_; ++r) {
    if (std::gcd(r, q_) == 1) units_.push_back(r);
  }
  additive_cos_.reserve(units_.size());
  additive_sin_.reserve(units_.size());
  const kernels::RootTable additive(static_cast<std::int32_t>(q_));
  for (const std::int64_t u : units_) {
    additive_cos_.push_back(additive.cos_data()[u]);
    additive_sin_.push_back(additive.sin_data()[u]);
  }
}

std::span<const std::int32_t> CharacterGroup::logs(std::int64_t r) const {
  const std::int64_t rr = positive_mod(r, q_);
  const std::size_t ncomp = components_.size();
  if (std::gcd(rr, q_) != 1) return {};
  return std::span<const std::int32_t>(log_matrix_).subspan(rr * ncomp, ncomp);
}

DirichletCharacter CharacterGroup::character(std::size_t index) const {
  if (index >= size()) throw DomainError("character index out of range");
  std::vector<std::int32_t> exps(components_.size(), 0);
  for (std::size_t i = components_.size(); i-- > 0;) {
    exps[i] = static_cast<std::int32_t>(index % components_[i].order);
    index /= components_[i].order;
  }
  return character_from_exponents(std::move(exps));
}

DirichletCharacter CharacterGroup::character_from_exponents(std::vector<std::int32_t> exps) const {
  if (exps.size() != components_.size()) throw DomainError("exponent vector has wrong length");
  for (std::size_t i = 0; i < exps.size(); ++i) {
    exps[i] = static_cast<std::int32_t>(positive_mod(exps[i], components_[i].order));
  }
  return DirichletCharacter(shared_from_this(), std::move(exps));
}

std::vector<DirichletCharacter> CharacterGroup::all_characters() const {
  std::vector<DirichletCharacter> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(character(i));
  return out;
}

std::vector<DirichletCharacter> CharacterGroup::primitive_characters() const {
  std::vector<DirichletCharacter> out;
  for (std::size_t i = 0; i < size(); ++i) {
    auto chi = character(i);
    if (chi.is_primitive()) out.push_back(std::move(chi));
  }
  return out;
}

namespace {
constexpr char kMagic[4] = {'L', 'H', 'C', 'G'};
constexpr std::uint32_t kFormatVersion = 1;

template <typename T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}
template <typename T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw std::runtime_error("character table truncated");
  return v;
}
}  // namespace

void CharacterGroup::serialize(std::ostream& out) const {
  out.write(kMagic, 4);
  put<std::uint32_t>(out, kFormatVersion);
  put<std::int64_t>(out, q_);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(components_.size()));
  for (const auto& c : components_) {
    put<std::int64_t>(out, c.prime);
    put<std::int32_t>(out, c.prime_exponent);
    put<std::int64_t>(out, c.generator);
    put<std::int32_t>(out, c.order);
    put<std::uint8_t>(out, c.is_sign ? 1 : 0);
  }
  out.write(reinterpret_cast<const char*>(log_matrix_.data()),
            static_cast<std::streamsize>(log_matrix_.size() * sizeof(std::int32_t)));
}

std::shared_ptr<const CharacterGroup> CharacterGroup::deserialize(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) throw std::runtime_error("bad character table magic");
  if (get<std::uint32_t>(in) != kFormatVersion) throw std::runtime_error("character table version mismatch");
  const auto q = get<std::int64_t>(in);
  if (q < 1 || q > 1'000'000) throw std::runtime_error("character table modulus out of range");
  const auto ncomp = get<std::uint32_t>(in);
  if (ncomp > 64) throw std::runtime_error("character table component count out of range");
  std::vector<CyclicComponent> comps;
  std::int64_t order_product = 1;
  for (std::uint32_t i = 0; i < ncomp; ++i) {
    CyclicComponent c{};
    c.prime = get<std::int64_t>(in);
    c.prime_exponent = get<std::int32_t>(in);
    c.generator = get<std::int64_t>(in);
    c.order = get<std::int32_t>(in);
    c.is_sign = get<std::uint8_t>(in) != 0;
    if (c.prime < 2 || c.prime_exponent < 1 || c.prime_exponent > 40 || c.order < 1) {
      throw std::runtime_error("component header out of range");
    }
    c.modulus = 1;
    for (int j = 0; j < c.prime_exponent; ++j) c.modulus *= c.prime;
    if (q % c.modulus != 0) throw std::runtime_error("component modulus does not divide q");
    // The generator must have exactly the stated order.
    if (mod_pow(c.generator, c.order, c.modulus) != 1) throw std::runtime_error("generator order mismatch");
    for (const auto& pe : factorize(c.order)) {
      if (mod_pow(c.generator, c.order / pe.prime, c.modulus) == 1) {
        throw std::runtime_error("generator order mismatch");
      }
    }
    order_product *= c.order;
    comps.push_back(c);
  }
  if (order_product != euler_phi(q)) throw std::runtime_error("component orders do not multiply to phi(q)");
  std::vector<std::int32_t> matrix(static_cast<std::size_t>(q) * ncomp);
  in.read(reinterpret_cast<char*>(matrix.data()),
          static_cast<std::streamsize>(matrix.size() * sizeof(std::int32_t)));
  if (!in) throw std::runtime_error("character table truncated");
  for (std::int64_t r = 0; r < q; ++r) {
    const bool unit = std::gcd(r, q) == 1;
    for (std::uint32_t i = 0; i < ncomp; ++i) {
      const std::int32_t v = matrix[r * ncomp + i];
      if (unit ? (v < 0 || v >= comps[i].order) : v != -1) {
        throw std::runtime_error("discrete-log matrix entry out of range");
      }
    }
  }
  return std::shared_ptr<const CharacterGroup>(
      new CharacterGroup(q, std::move(comps), std::move(matrix)));
}

DirichletCharacter::DirichletCharacter(std::shared_ptr<const CharacterGroup> group,
                                       std::vector<std::int32_t> exps)
    : group_(std::move(group)), exponents_(std::move(exps)) {
  const std::int64_t q = group_->modulus();
  const auto minus_one = phase(q - 1);
  parity_ = (minus_one && *minus_one != 0) ? 1 : 0;

  // Conductor as the product of local conductors.
  conductor_ = 1;
  const auto& comps = group_->components_;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto& c = comps[i];
    const std::int32_t e = exponents_[i];
    if (c.prime == 2) {
      if (!c.is_sign) continue;  // handled together with the sign factor
      const bool has_five = i + 1 < comps.size() && comps[i + 1].prime == 2 && !comps[i + 1].is_sign;
      const std::int32_t e5 = has_five ? exponents_[i + 1] : 0;
      if (e5 != 0) {
        const std::int32_t ord5 = comps[i + 1].order;
        const std::int32_t local_order = ord5 / std::gcd(e5, ord5);
        conductor_ *= std::int64_t{4} * local_order;
      } else if (e != 0) {
        conductor_ *= 4;
      }
      continue;
    }
    if (e == 0) continue;
    std::int32_t local_order = c.order / std::gcd(e, c.order);
    std::int64_t f = c.prime;
    while (local_order % c.prime == 0) {
      local_order /= static_cast<std::int32_t>(c.prime);
      f *= c.prime;
    }
    conductor_ *= f;
  }
}

std::size_t DirichletCharacter::index() const {
  std::size_t idx = 0;
  const auto comps = group_->components();
  for (std::size_t i = 0; i < comps.size(); ++i) idx = idx * comps[i].order + exponents_[i];
  return idx;
}

std::optional<std::int32_t> DirichletCharacter::phase(std::int64_t n) const {
  const std::int64_t q = group_->modulus();
  const std::int64_t r = positive_mod(n, q);
  if (std::gcd(r, q) != 1) return std::nullopt;
  const auto lg = group_->logs(r);
  const std::int64_t m = group_->exponent();
  std::int64_t k = 0;
  for (std::size_t i = 0; i < lg.size(); ++i) {
    k = (k + static_cast<std::int64_t>(exponents_[i]) * lg[i] % m * group_->stride_[i]) % m;
  }
  return static_cast<std::int32_t>(k);
}

std::complex<double> DirichletCharacter::operator()(std::int64_t n) const {
  const auto k = phase(n);
  return k ? group_->roots().root(*k) : std::complex<double>{0.0, 0.0};
}

void DirichletCharacter::unit_phases(std::vector<std::int32_t>& out) const {
  const auto units = group_->units();
  out.resize(units.size());
  const std::size_t ncomp = exponents_.size();
  const std::int64_t m = group_->exponent();
  std::vector<std::int64_t> mult(ncomp);
  for (std::size_t i = 0; i < ncomp; ++i) {
    mult[i] = static_cast<std::int64_t>(exponents_[i]) * group_->stride_[i] % m;
  }
  const std::int32_t* lm = group_->log_matrix_.data();
  for (std::size_t j = 0; j < units.size(); ++j) {
    const std::int32_t* lg = lm + units[j] * ncomp;
    std::int64_t k = 0;
    for (std::size_t i = 0; i < ncomp; ++i) k += mult[i] * lg[i] % m;
    out[j] = static_cast<std::int32_t>(k % m);
  }
}

void DirichletCharacter::residue_phases(std::vector<std::int32_t>& out) const {
  std::vector<std::int32_t> per_unit;
  unit_phases(per_unit);
  out.assign(static_cast<std::size_t>(modulus()), -1);
  const auto units = group_->units();
  for (std::size_t j = 0; j < units.size(); ++j) out[units[j]] = per_unit[j];
}

std::vector<std::int32_t> DirichletCharacter::unit_phases() const {
  std::vector<std::int32_t> out;
  unit_phases(out);
  return out;
}

bool DirichletCharacter::is_principal() const {
  return std::all_of(exponents_.begin(), exponents_.end(), [](std::int32_t e) { return e == 0; });
}

bool DirichletCharacter::is_real() const {
  const auto comps = group_->components();
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if ((2 * static_cast<std::int64_t>(exponents_[i])) % comps[i].order != 0) return false;
  }
  return true;
}

DirichletCharacter DirichletCharacter::conj() const {
  std::vector<std::int32_t> exps(exponents_.size());
  const auto comps = group_->components();
  for (std::size_t i = 0; i < exps.size(); ++i) {
    exps[i] = exponents_[i] == 0 ? 0 : comps[i].order - exponents_[i];
  }
  return DirichletCharacter(group_, std::move(exps));
}

std::complex<double> DirichletCharacter::gauss_sum() const {
  const auto phases = unit_phases();
  return kernels::phase_dot_complex(group_->additive_cos(), group_->additive_sin(), phases,
                                    group_->roots());
}

std::complex<double> DirichletCharacter::root_number() const {
  if (!is_primitive()) throw DomainError("root_number requires a primitive character");
  const std::complex<double> i_a = parity_ == 0 ? std::complex<double>{1, 0} : std::complex<double>{0, 1};
  return gauss_sum() / (i_a * std::sqrt(static_cast<double>(modulus())));
}

std::int64_t DirichletCharacter::conductor_by_search() const {
  const std::int64_t q = modulus();
  for (const std::int64_t d : divisors(q)) {
    bool trivial = true;
    for (std::int64_t r = 1; r < q + 1 && trivial; r += d) {
      const auto k = phase(r);
      if (k && *k != 0) trivial = false;
    }
    if (trivial) return d;
  }
  return q;
}

std::int64_t phi_star(std::int64_t q) {
  if (q < 1) throw DomainError("phi_star: q must be >= 1");
  std::int64_t num = q;
  std::int64_t den = 1;
  for (const auto& [p, e] : factorize(q)) {
    if (e == 1) {
      num *= (p - 2);
      den *= p;
    } else {
      num *= (p - 1) * (p - 1);
      den *= p * p;
    }
  }
  return num / den;
}

namespace {
std::int64_t divisor_phi_mu_sum(std::int64_t q, std::int64_t diff) {
  std::int64_t total = 0;
  for (const std::int64_t h : divisors(q)) {
    if (diff % h != 0) continue;
    const std::int64_t rest = q / h;
    int mu = 1;
    for (const auto& [p, e] : factorize(rest)) {
      if (e > 1) {
        mu = 0;
        break;
      }
      mu = -mu;
    }
    total += euler_phi(h) * mu;
  }
  return total;
}
}  // namespace

std::int64_t orthogonality_formula(std::int64_t q, std::int64_t m, std::int64_t n,
                                   std::optional<int> sign) {
  if (q < 1) throw DomainError("orthogonality_formula: q must be >= 1");
  if (std::gcd(m, q) != 1 || std::gcd(n, q) != 1) {
    throw DomainError("orthogonality_formula: m and n must be coprime to q");
  }
  const std::int64_t minus = divisor_phi_mu_sum(q, m - n);
  if (!sign) return minus;
  const std::int64_t plus = divisor_phi_mu_sum(q, m + n);
  const std::int64_t twice = minus + ((*sign % 2 == 0) ? plus : -plus);
  if (twice % 2 != 0) throw std::logic_error("orthogonality_formula: odd half-sum");
  return twice / 2;
}

std::complex<double> orthogonality_bruteforce(const CharacterGroup& group, std::int64_t m,
                                              std::int64_t n, std::optional<int> sign) {
  const std::int64_t q = group.modulus();
  if (std::gcd(m, q) != 1 || std::gcd(n, q) != 1) {
    throw DomainError("orthogonality_bruteforce: m and n must be coprime to q");
  }
  std::complex<double> total{0.0, 0.0};
  for (std::size_t i = 0; i < group.size(); ++i) {
    const auto chi = group.character(i);
    if (!chi.is_primitive()) continue;
    if (sign && chi.parity() != (*sign % 2)) continue;
    total += chi(m) * std::conj(chi(n));
  }
  return total;
}

OrthogonalityAudit orthogonality_audit(const CharacterGroup& group, std::int64_t m_max) {
  const std::int64_t q = group.modulus();
  const auto prim = group.primitive_characters();
  OrthogonalityAudit audit;
  audit.q = q;
  std::vector<std::vector<std::complex<double>>> values(prim.size());
  for (std::size_t c = 0; c < prim.size(); ++c) {
    values[c].resize(static_cast<std::size_t>(m_max) + 1);
    for (std::int64_t m = 1; m <= m_max; ++m) values[c][m] = prim[c](m);
  }
  for (std::int64_t m = 1; m <= m_max; ++m) {
    if (std::gcd(m, q) != 1) continue;
    for (std::int64_t n = 1; n <= m_max; ++n) {
      if (std::gcd(n, q) != 1) continue;
      ++audit.pairs;
      std::complex<double> sums[3] = {};
      for (std::size_t c = 0; c < prim.size(); ++c) {
        const auto v = values[c][m] * std::conj(values[c][n]);
        sums[0] += v;
        sums[1 + prim[c].parity()] += v;
      }
      const std::int64_t expect[3] = {orthogonality_formula(q, m, n), orthogonality_formula(q, m, n, 0),
                                      orthogonality_formula(q, m, n, 1)};
      for (int v = 0; v < 3; ++v) {
        const double dev = std::abs(sums[v] - std::complex<double>(static_cast<double>(expect[v]), 0.0));
        audit.max_deviation = std::max(audit.max_deviation, dev);
        if (std::llround(sums[v].real()) != expect[v]) ++audit.mismatches;
      }
    }
  }
  return audit;
}

}  // namespace lhybrid

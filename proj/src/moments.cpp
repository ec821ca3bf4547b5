#include "lhybrid/moments.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "lhybrid/cache.hpp"
#include "lhybrid/parallel.hpp"
#include "lhybrid/report.hpp"

namespace lhybrid {
namespace {

constexpr double kNearZero = 1e-12;

double e_gamma() { return std::exp(kEulerGamma); }

bool needs_x(MomentKind which) { return which != MomentKind::kL; }
bool uses_z(MomentKind which) {
  return which == MomentKind::kZRatio || which == MomentKind::kZZeros || which == MomentKind::kPZSplit;
}

bool is_integer(double k) { return k == std::floor(k); }

double local_inverse_product(std::int64_t q, double k, double X, bool restrict_to_x) {
  double prod = 1.0;
  for (const auto& [p, e] : factorize(q)) {
    if (restrict_to_x && static_cast<double>(p) > X) continue;
    prod /= local_divisor_square_sum(k, static_cast<double>(p));
  }
  return prod;
}

}  // namespace

std::string_view moment_kind_name(MomentKind kind) {
  switch (kind) {
    case MomentKind::kL: return "L";
    case MomentKind::kP: return "P";
    case MomentKind::kZRatio: return "Z_ratio";
    case MomentKind::kZZeros: return "Z_zeros";
    case MomentKind::kPZSplit: return "PZ-split";
  }
  return "?";
}

MomentKind parse_moment_kind(std::string_view name) {
  if (name == "L") return MomentKind::kL;
  if (name == "P") return MomentKind::kP;
  if (name == "Z" || name == "Z_ratio") return MomentKind::kZRatio;
  if (name == "Z_zeros") return MomentKind::kZZeros;
  if (name == "PZ-split" || name == "PZ") return MomentKind::kPZSplit;
  throw DomainError("unknown moment kind '" + std::string(name) + "'");
}

const Prediction* MomentReport::find(std::string_view label) const {
  for (const auto& p : predictions) {
    if (p.label == label) return &p;
  }
  return nullptr;
}

CharacterSweep sweep_characters(std::int64_t q, MomentKind which, const MomentOptions& opts) {
  if (q < 3) throw DomainError("moments need q >= 3 (there are no primitive characters mod 2)");
  if (needs_x(which) && !opts.X) throw DomainError("this moment kind requires X");
  if (which == MomentKind::kZZeros && !opts.zero_height) {
    throw DomainError("Z_zeros requires a zero height");
  }
  const auto group = CharacterGroup::create(q);
  CharacterSweep sweep;
  sweep.characters = group->primitive_characters();
  const std::size_t n = sweep.characters.size();
  const bool want_l = which != MomentKind::kP;
  const bool want_p = which != MomentKind::kL;
  const bool want_ratio = which == MomentKind::kZRatio || which == MomentKind::kPZSplit;
  const bool want_zeros = which == MomentKind::kZZeros;

  std::optional<HurwitzTable> table;
  if (want_l) table.emplace(*group, cplx(0.5, 0.0));
  std::optional<HybridContext> ctx;
  if (want_p) ctx.emplace(q, *opts.X);

  if (want_l) sweep.L.resize(n);
  if (want_p) sweep.P.resize(n);
  if (want_ratio) sweep.Z_ratio.resize(n);
  if (want_zeros) sweep.Z_zeros.resize(n);
  std::vector<char> excluded(n, 0);

  parallel_for(
      n,
      [&](std::size_t i) {
        const auto& chi = sweep.characters[i];
        cplx L = 0.0;
        if (want_l) {
          L = l_value(chi, *table);
          sweep.L[i] = L;
          excluded[i] = std::abs(L) <= kNearZero;
        }
        if (!want_p) return;
        if (want_ratio && !excluded[i]) {
          const HybridValue v = z_x_from_ratio(chi, *ctx, L);
          sweep.P[i] = v.P_X;
          sweep.Z_ratio[i] = v.Z_X_ratio;
        } else {
          sweep.P[i] = ctx->p_x(chi);
        }
        if (want_zeros && !excluded[i]) {
          const ZeroList zeros = opts.cache ? opts.cache->zeros(chi, *opts.zero_height)
                                            : find_zeros(chi, *opts.zero_height);
          sweep.Z_zeros[i] = z_x_from_zeros(ctx->bump(), zeros);
        }
      },
      opts.threads);
  sweep.excluded.assign(excluded.begin(), excluded.end());
  return sweep;
}

double predicted_moment_L(std::int64_t q, int k) {
  if (k < 1 || k > 4) throw DomainError("predicted_moment_L: k must be in 1..4");
  if (q < 2) throw DomainError("predicted_moment_L: q must be >= 2");
  const double kd = k;
  return arithmetic_factor_a(kd) * barnes_ratio(k) * local_inverse_product(q, kd, 0.0, false) *
         std::pow(std::log(static_cast<double>(q)), kd * kd);
}

PPrediction predicted_moment_P(std::int64_t q, double k, double X) {
  if (!(X >= 2.0)) throw DomainError("predicted_moment_P: X must be >= 2");
  if (k < 0) throw DomainError("predicted_moment_P: k must be >= 0");
  const double base = arithmetic_factor_a(k) * std::pow(e_gamma() * std::log(X), k * k);
  return {base * local_inverse_product(q, k, X, true), base * local_inverse_product(q, k, X, false)};
}

ZPrediction predicted_moment_Z(std::int64_t q, int k, double X) {
  if (!(X >= 2.0)) throw DomainError("predicted_moment_Z: X must be >= 2");
  if (k < 0) throw DomainError("predicted_moment_Z: k must be >= 0");
  const double ratio = std::log(static_cast<double>(q)) / (e_gamma() * std::log(X));
  ZPrediction out;
  out.conjecture = barnes_ratio(k) * std::pow(ratio, static_cast<double>(k) * k);
  double large = 1.0;  // product over p > X, p | q
  for (const auto& [p, e] : factorize(q)) {
    const double pd = static_cast<double>(p);
    if (pd <= X) continue;
    large *= k == 1 ? (1.0 - 1.0 / pd) : std::pow(1.0 - 1.0 / pd, 3) / (1.0 + 1.0 / pd);
  }
  if (k == 1) {
    out.theorem = large * ratio;
  } else if (k == 2) {
    out.theorem = large * std::pow(ratio, 4) / 12.0;
  } else {
    out.flagged = true;
  }
  return out;
}

MomentReport moment_from_sweep(const CharacterSweep& sweep, std::int64_t q, double k,
                               MomentKind which, const MomentOptions& opts) {
  MomentReport report;
  report.q = q;
  report.k = k;
  report.which = which;
  report.X = opts.X;
  if (which == MomentKind::kZZeros) report.zero_height = opts.zero_height;

  const std::size_t n = sweep.characters.size();
  std::vector<double> samples;
  samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (uses_z(which) && sweep.excluded[i]) {
      ++report.excluded;
      continue;
    }
    cplx f;
    switch (which) {
      case MomentKind::kL: f = sweep.L[i]; break;
      case MomentKind::kP: f = sweep.P[i]; break;
      case MomentKind::kZRatio: f = sweep.Z_ratio[i]; break;
      case MomentKind::kZZeros: f = sweep.Z_zeros[i]; break;
      case MomentKind::kPZSplit: f = sweep.P[i] * sweep.Z_ratio[i]; break;
    }
    samples.push_back(std::pow(std::norm(f), k));
  }
  report.characters = samples.size();
  if (samples.empty()) throw DomainError("no characters left after exclusions");
  report.empirical = pairwise_sum(samples) / static_cast<double>(samples.size());
  if (opts.keep_samples) report.samples = std::move(samples);

  auto add = [&](std::string label, double value) {
    report.predictions.push_back({std::move(label), value, report.empirical / value});
  };
  const bool int_k = is_integer(k) && k >= 1;
  switch (which) {
    case MomentKind::kL:
    case MomentKind::kPZSplit:
      if (int_k && k <= 4) {
        const double v = predicted_moment_L(q, static_cast<int>(k));
        const double lq = std::log(static_cast<double>(q));
        if (k == 1) {
          add("second_moment", static_cast<double>(euler_phi(q)) / static_cast<double>(q) * lq);
        }
        if (k == 2) {
          double local = 1.0;
          for (const auto& [p, e] : factorize(q)) {
            const double ip = 1.0 / static_cast<double>(p);
            local *= std::pow(1.0 - ip, 3) / (1.0 + ip);
          }
          add("fourth_moment", local * std::pow(lq, 4) / (2.0 * std::numbers::pi * std::numbers::pi));
        }
        add("moment_conjecture", v);
      }
      break;
    case MomentKind::kP: {
      const PPrediction p = predicted_moment_P(q, k, *opts.X);
      add("euler_restricted", p.restricted);
      add("euler_full", p.full);
      break;
    }
    case MomentKind::kZRatio:
    case MomentKind::kZZeros:
      if (int_k) {
        const ZPrediction z = predicted_moment_Z(q, static_cast<int>(k), *opts.X);
        if (z.theorem) add("hadamard", *z.theorem);
        add("cue_leading", z.conjecture);
      }
      break;
  }
  return report;
}

MomentReport empirical_moment(std::int64_t q, double k, MomentKind which, const MomentOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const CharacterSweep sweep = sweep_characters(q, which, opts);
  MomentReport report = moment_from_sweep(sweep, q, k, which, opts);
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

MomentReport splitting_check(std::int64_t q, double k, double X, const MomentOptions& opts_in) {
  const auto start = std::chrono::steady_clock::now();
  MomentOptions opts = opts_in;
  opts.X = X;
  const CharacterSweep sweep = sweep_characters(q, MomentKind::kPZSplit, opts);
  const MomentReport ml = moment_from_sweep(sweep, q, k, MomentKind::kL, opts);
  const MomentReport mp = moment_from_sweep(sweep, q, k, MomentKind::kP, opts);
  const MomentReport mz = moment_from_sweep(sweep, q, k, MomentKind::kZRatio, opts);

  MomentReport report;
  report.q = q;
  report.k = k;
  report.X = X;
  report.which = MomentKind::kPZSplit;
  report.empirical = ml.empirical;
  report.characters = ml.characters;
  report.excluded = mz.excluded;
  const double pz = mp.empirical * mz.empirical;
  report.predictions.push_back({"M(P)M(Z_ratio)", pz, ml.empirical / pz});
  if (opts.zero_height) {
    MomentOptions zopts = opts;
    const CharacterSweep zs = sweep_characters(q, MomentKind::kZZeros, zopts);
    const MomentReport mzz = moment_from_sweep(zs, q, k, MomentKind::kZZeros, zopts);
    report.zero_height = opts.zero_height;
    const double pzz = mp.empirical * mzz.empirical;
    report.predictions.push_back({"M(P)M(Z_zeros)", pzz, ml.empirical / pzz});
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

DiagonalReport diagonal_offdiagonal(std::int64_t q, double k, double X, std::int64_t cutoff,
                                    unsigned threads) {
  if (q < 3) throw DomainError("diagonal_offdiagonal: q must be >= 3");
  const CoefficientTable table = coefficient_table(k, X, cutoff);
  std::vector<double> diag;
  for (const std::int64_t n : table.support) {
    if (std::gcd(n, q) != 1) continue;
    const double a = table.values[n];
    diag.push_back(a * a / static_cast<double>(n));
  }
  DiagonalReport out;
  out.T1 = pairwise_sum(diag);

  const auto group = CharacterGroup::create(q);
  const auto chars = group->primitive_characters();
  std::vector<double> squares(chars.size());
  parallel_for(
      chars.size(),
      [&](std::size_t i) {
        squares[i] = std::norm(dirichlet_poly_eval(table, chars[i], static_cast<double>(cutoff)));
      },
      threads);
  out.total = pairwise_sum(squares) / static_cast<double>(chars.size());
  out.T2 = out.total - out.T1;
  out.closed_form = predicted_moment_P(q, k, X).restricted;
  return out;
}

std::optional<std::string> regime_warning(std::int64_t q, double X) {
  const double lq = std::log(static_cast<double>(q));
  if (X > lq * lq) {
    std::ostringstream msg;
    msg << "X = " << X << " exceeds (log q)^2 = " << lq * lq
        << "; the moment theorems assume X much smaller than (log q)^2";
    return msg.str();
  }
  return std::nullopt;
}

void write_moment_csv_header(std::ostream& out) {
  out << "q,k,X,which,empirical,prediction_label,prediction,ratio,excluded,seconds\n";
}

void write_moment_csv_rows(std::ostream& out, const MomentReport& r) {
  const std::string x = r.X ? format_double(*r.X) : "";
  auto row = [&](const std::string& label, const std::string& value, const std::string& ratio) {
    out << r.q << ',' << format_double(r.k) << ',' << x << ',' << moment_kind_name(r.which) << ','
        << format_double(r.empirical) << ',' << label << ',' << value << ',' << ratio << ','
        << r.excluded << ',' << format_double(r.seconds) << '\n';
  };
  if (r.predictions.empty()) row("", "", "");
  for (const auto& p : r.predictions) row(p.label, format_double(p.value), format_double(p.ratio));
}

std::string moment_report_json(const MomentReport& r) {
  nlohmann::ordered_json j;
  j["q"] = r.q;
  j["k"] = r.k;
  j["X"] = r.X ? nlohmann::ordered_json(*r.X) : nlohmann::ordered_json(nullptr);
  j["which"] = std::string(moment_kind_name(r.which));
  j["empirical"] = r.empirical;
  auto preds = nlohmann::ordered_json::array();
  for (const auto& p : r.predictions) {
    preds.push_back({{"label", p.label}, {"prediction", p.value}, {"ratio", p.ratio}});
  }
  j["predictions"] = preds;
  j["characters"] = r.characters;
  j["excluded"] = r.excluded;
  if (r.zero_height) j["zero_height"] = *r.zero_height;
  if (r.seed) j["seed"] = *r.seed;
  j["seconds"] = r.seconds;
  if (!r.samples.empty()) j["samples"] = r.samples;
  return j.dump();
}

}  // namespace lhybrid

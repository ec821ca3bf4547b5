#pragma once
// Moments over primitive characters and the closed-form predictions they are
// compared against.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lhybrid/hybrid.hpp"

namespace lhybrid {

class Cache;

enum class MomentKind { kL, kP, kZRatio, kZZeros, kPZSplit };

std::string_view moment_kind_name(MomentKind kind);
/// Accepts L, P, Z_ratio, Z_zeros, PZ-split (and Z as an alias for Z_ratio).
MomentKind parse_moment_kind(std::string_view name);

struct Prediction {
  std::string label;
  double value = 0;
  double ratio = 0;  // empirical / value
};

struct MomentReport {
  std::int64_t q = 0;
  double k = 0;
  std::optional<double> X;
  std::optional<double> zero_height;
  MomentKind which = MomentKind::kL;
  double empirical = 0;
  std::vector<Prediction> predictions;
  std::size_t characters = 0;  // used in the average
  std::size_t excluded = 0;    // |L(1/2)| <= 1e-12, Z kinds only
  double seconds = 0;
  std::optional<std::uint64_t> seed;
  std::vector<double> samples;  // |value|^{2k} per character, when requested

  const Prediction* find(std::string_view label) const;
};

struct MomentOptions {
  std::optional<double> X;
  std::optional<double> zero_height;
  unsigned threads = 0;
  bool keep_samples = false;
  Cache* cache = nullptr;  // zero lists are read from / written to it when set
};

/// Per-character central values for every primitive character mod q, in
/// primitive_characters() order. Fields not needed by `which` stay empty.
struct CharacterSweep {
  std::vector<DirichletCharacter> characters;
  std::vector<cplx> L;
  std::vector<cplx> P;
  std::vector<cplx> Z_ratio;
  std::vector<cplx> Z_zeros;
  std::vector<bool> excluded;  // |L| <= 1e-12
};

CharacterSweep sweep_characters(std::int64_t q, MomentKind which, const MomentOptions& opts);

/// (1/phi*(q)) sum* |f(chi)|^{2k} for f = L(1/2), P_X, Z_X (ratio or zero
/// form), or P_X Z_X. Summation is pairwise in character order.
MomentReport empirical_moment(std::int64_t q, double k, MomentKind which,
                              const MomentOptions& opts = {});
/// Same, from a sweep computed earlier.
MomentReport moment_from_sweep(const CharacterSweep& sweep, std::int64_t q, double k,
                               MomentKind which, const MomentOptions& opts);

/// a(k) G(k+1)^2/G(2k+1) prod_{p|q} (sum_m d_k(p^m)^2 / p^m)^-1 (log q)^{k^2}, k in 1..4.
double predicted_moment_L(std::int64_t q, int k);

struct PPrediction {
  double restricted;  // product over p <= X, p | q
  double full;        // product over all p | q
};
PPrediction predicted_moment_P(std::int64_t q, double k, double X);

struct ZPrediction {
  std::optional<double> theorem;  // k = 1, 2 only
  double conjecture;              // G(k+1)^2/G(2k+1) (log q / (e^gamma log X))^{k^2}
  bool flagged = false;           // k outside {1, 2}
};
ZPrediction predicted_moment_Z(std::int64_t q, int k, double X);

/// M(L) / (M(P) M(Z)) for the ratio form of Z, and the zero form when
/// opts.zero_height is set. Reported as a MomentReport of kind PZ-split with
/// empirical = M(L) and predictions "M(P)M(Z_ratio)" / "M(P)M(Z_zeros)".
MomentReport splitting_check(std::int64_t q, double k, double X, const MomentOptions& opts = {});

struct DiagonalReport {
  double T1 = 0;
  double T2 = 0;
  double closed_form = 0;  // a_k prod_{p<=X,p|q}(...)^-1 (e^gamma log X)^{k^2}
  double total = 0;        // T1 + T2, the empirical mean of |D(chi)|^2
};

/// D(chi) = sum_{n in S(X), n <= cutoff} alpha_k(n) chi(n) / sqrt n; T1 its
/// diagonal, T2 the rest of the mean square over primitive chi.
DiagonalReport diagonal_offdiagonal(std::int64_t q, double k, double X, std::int64_t cutoff,
                                    unsigned threads = 0);

/// Non-empty when X sits far outside the asymptotic regime for q.
std::optional<std::string> regime_warning(std::int64_t q, double X);

/// Columns: q,k,X,which,empirical,prediction_label,prediction,ratio,excluded,seconds.
void write_moment_csv_header(std::ostream& out);
void write_moment_csv_rows(std::ostream& out, const MomentReport& report);
std::string moment_report_json(const MomentReport& report);

}  // namespace lhybrid

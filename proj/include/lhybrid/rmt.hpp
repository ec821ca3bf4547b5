#pragma once
// CUE side: Haar-random unitaries, characteristic polynomial moments, and the
// exact finite-N value of E|Z_N|^{2k}.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lhybrid {

/// splitmix64 finalizer; used to derive per-sample seeds from (seed, index).
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

/// Eigenphases in [0, 2 pi) of a Haar unitary: complex Gaussian matrix, QR,
/// columns rescaled so that R has a positive diagonal, then eigenvalues.
/// Deterministic in (seed, stream).
std::vector<double> sample_cue_phases(int N, std::uint64_t seed, std::uint64_t stream);

/// prod_n |1 - e^{i(theta_n - theta)}|, summed in log space. 0 on an exact hit.
double char_poly_modulus(std::span<const double> phases, double theta);

/// prod_{j=1}^N Gamma(j) Gamma(j + 2k) / Gamma(j + k)^2.
double cue_moment_exact(int N, int k);

/// G(k+1)^2 / G(2k+1) N^{k^2}.
double cue_moment_asymptotic(int N, int k);

struct CueEnsembleResult {
  int N = 0;
  double k = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double mc_mean = 0;
  double mc_stderr = 0;
  std::optional<double> exact;       // integer k
  std::optional<double> asymptotic;  // integer k
  double seconds = 0;
};

/// Mean and standard error of |Z_N(U, 0)|^{2k} over `samples` draws. Sample i
/// uses stream_seed(seed, i), so the result does not depend on `threads`.
CueEnsembleResult cue_moment_mc(int N, double k, std::uint64_t samples, std::uint64_t seed,
                                unsigned threads = 0);

/// Columns: N,k,samples,seed,mc_mean,mc_stderr,exact,asymptotic,z_score,seconds.
std::string cue_csv_header();
std::string cue_csv_row(const CueEnsembleResult& r);
std::string cue_json(const CueEnsembleResult& r);

}  // namespace lhybrid

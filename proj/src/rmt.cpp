#include "lhybrid/rmt.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <json.hpp>

#include "lhybrid/arith.hpp"
#include "lhybrid/parallel.hpp"
#include "lhybrid/report.hpp"
#include "lhybrid/specfun.hpp"

namespace lhybrid {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

std::vector<double> sample_cue_phases(int N, std::uint64_t seed, std::uint64_t stream) {
  if (N < 1) throw DomainError("sample_cue_phases: N must be >= 1");
  std::mt19937_64 rng(stream_seed(seed, stream));
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  Eigen::MatrixXcd z(N, N);
  for (int j = 0; j < N; ++j) {
    for (int i = 0; i < N; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      z(i, j) = {re, im};
    }
  }
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < N; ++j) {
    const std::complex<double> d = r(j, j);
    const double a = std::abs(d);
    if (a > 0.0) q.col(j) *= d / a;
  }
  const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(q, false);
  std::vector<double> phases(N);
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  for (int i = 0; i < N; ++i) {
    double th = std::arg(eig.eigenvalues()(i));
    if (th < 0.0) th += kTwoPi;
    if (th >= kTwoPi) th -= kTwoPi;
    phases[i] = th;
  }
  return phases;
}

double char_poly_modulus(std::span<const double> phases, double theta) {
  double log_sum = 0.0;
  for (const double ph : phases) {
    // |1 - e^{i x}| = 2 |sin(x / 2)|
    const double m = 2.0 * std::abs(std::sin(0.5 * (ph - theta)));
    if (m == 0.0) return 0.0;
    log_sum += std::log(m);
  }
  return std::exp(log_sum);
}

double cue_moment_exact(int N, int k) {
  if (N < 1) throw DomainError("cue_moment_exact: N must be >= 1");
  if (k < 0) throw DomainError("cue_moment_exact: k must be >= 0");
  double total = 0.0;
  for (int j = 1; j <= N; ++j) {
    total += std::lgamma(j) + std::lgamma(j + 2.0 * k) - 2.0 * std::lgamma(j + static_cast<double>(k));
  }
  return std::exp(total);
}

double cue_moment_asymptotic(int N, int k) {
  return barnes_ratio(k) * std::pow(static_cast<double>(N), static_cast<double>(k) * k);
}

CueEnsembleResult cue_moment_mc(int N, double k, std::uint64_t samples, std::uint64_t seed,
                                unsigned threads) {
  if (samples < 1000) throw DomainError("cue_moment_mc: samples must be >= 1000");
  const auto start = std::chrono::steady_clock::now();
  std::vector<double> values(samples);
  parallel_for(
      samples,
      [&](std::size_t i) {
        const auto phases = sample_cue_phases(N, seed, i);
        values[i] = std::pow(char_poly_modulus(phases, 0.0), 2.0 * k);
      },
      threads);
  CueEnsembleResult r;
  r.N = N;
  r.k = k;
  r.samples = samples;
  r.seed = seed;
  const double n = static_cast<double>(samples);
  r.mc_mean = pairwise_sum(values) / n;
  std::vector<double> dev(samples);
  for (std::size_t i = 0; i < samples; ++i) dev[i] = (values[i] - r.mc_mean) * (values[i] - r.mc_mean);
  r.mc_stderr = std::sqrt(pairwise_sum(dev) / (n - 1.0) / n);
  if (k == std::floor(k) && k >= 0) {
    r.exact = cue_moment_exact(N, static_cast<int>(k));
    r.asymptotic = cue_moment_asymptotic(N, static_cast<int>(k));
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string cue_csv_header() { return "N,k,samples,seed,mc_mean,mc_stderr,exact,asymptotic,z_score,seconds\n"; }

std::string cue_csv_row(const CueEnsembleResult& r) {
  const std::string exact = r.exact ? format_double(*r.exact) : "";
  const std::string asym = r.asymptotic ? format_double(*r.asymptotic) : "";
  const std::string z = r.exact ? format_double((r.mc_mean - *r.exact) / r.mc_stderr) : "";
  return std::to_string(r.N) + ',' + format_double(r.k) + ',' + std::to_string(r.samples) + ',' +
         std::to_string(r.seed) + ',' + format_double(r.mc_mean) + ',' + format_double(r.mc_stderr) +
         ',' + exact + ',' + asym + ',' + z + ',' + format_double(r.seconds) + '\n';
}

std::string cue_json(const CueEnsembleResult& r) {
  nlohmann::ordered_json j;
  j["N"] = r.N;
  j["k"] = r.k;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["mc_mean"] = r.mc_mean;
  j["mc_stderr"] = r.mc_stderr;
  j["exact"] = r.exact ? nlohmann::ordered_json(*r.exact) : nlohmann::ordered_json(nullptr);
  j["asymptotic"] = r.asymptotic ? nlohmann::ordered_json(*r.asymptotic) : nlohmann::ordered_json(nullptr);
  j["z_score"] = r.exact ? nlohmann::ordered_json((r.mc_mean - *r.exact) / r.mc_stderr)
                         : nlohmann::ordered_json(nullptr);
  j["seconds"] = r.seconds;
  return j.dump();
}

}  // namespace lhybrid

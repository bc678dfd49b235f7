// SPDX-License-Identifier: Apache-2.0
#include "dbf/sync_mc.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "dbf/types.hpp"

namespace dbf {

namespace {

// SplitMix64 finaliser, used to derive independent per-trial seeds.
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Polar Box-Muller on the raw engine output keeps the draws identical
// across standard library implementations.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

 private:
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

double quantile(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

void SyncErrorModel::validate() const {
  if (!(phase_sigma >= 0.0)) throw std::invalid_argument("sync.phase_sigma must be >= 0");
  if (!(time_sigma >= 0.0)) throw std::invalid_argument("sync.time_sigma must be >= 0");
  if (!(freq_offset_sigma >= 0.0))
    throw std::invalid_argument("sync.freq_offset_sigma must be >= 0");
  if (!(carrier > 0.0)) throw std::invalid_argument("sync.carrier must be > 0");
  if (!(observation_time >= 0.0) || !std::isfinite(observation_time))
    throw std::invalid_argument("sync.observation_time must be >= 0");
}

double SyncErrorModel::equivalent_phase_sigma() const {
  const double from_time = 2.0 * kPi * carrier * time_sigma;
  const double from_freq = 2.0 * kPi * observation_time * freq_offset_sigma;
  // Independent zero-mean Gaussian terms add in variance.
  return std::sqrt(phase_sigma * phase_sigma + from_time * from_time + from_freq * from_freq);
}

double coherent_gain(std::span<const double> phase_errors) {
  if (phase_errors.empty()) throw std::invalid_argument("phase error list is empty");
  std::complex<double> sum = 0.0;
  for (double e : phase_errors) sum += std::polar(1.0, e);
  return std::norm(sum);
}

double analytic_expected_gain(int n, double phase_sigma) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!(phase_sigma >= 0.0)) throw std::invalid_argument("phase_sigma must be >= 0");
  const double nn = n;
  return nn + nn * (nn - 1.0) * std::exp(-phase_sigma * phase_sigma);
}

std::vector<double> sample_gains(const SyncErrorModel& model, int n, std::uint64_t trials,
                                 std::uint64_t seed) {
  model.validate();
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  const double sigma = model.equivalent_phase_sigma();
  std::vector<double> gains(trials);
  std::vector<double> errors(static_cast<std::size_t>(n));
  const std::uint64_t base = mix(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    GaussianStream stream(mix(base ^ mix(t)));
    for (auto& e : errors) e = sigma * stream.next();
    gains[t] = coherent_gain(errors);
  }
  return gains;
}

McResult run_mc(const SyncErrorModel& model, int n, std::uint64_t trials, std::uint64_t seed) {
  std::vector<double> gains = sample_gains(model, n, trials, seed);
  McResult r;
  r.trials = trials;
  r.seed = seed;
  double mean = 0.0;
  for (double g : gains) mean += g;
  mean /= static_cast<double>(trials);
  double var = 0.0;
  for (double g : gains) var += (g - mean) * (g - mean);
  var = trials > 1 ? var / static_cast<double>(trials - 1) : 0.0;
  r.mean_gain = mean;
  r.std_gain = std::sqrt(var);
  r.standard_error = r.std_gain / std::sqrt(static_cast<double>(trials));
  std::sort(gains.begin(), gains.end());
  for (double p : {0.05, 0.5, 0.95}) r.quantiles[p] = quantile(gains, p);
  return r;
}

}  // namespace dbf

// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo loss of coherent gain under per-satellite synchronisation
// errors. Timing and frequency errors are folded into carrier phase
// (narrowband): a delay dt shifts phase by 2 pi f dt, a frequency offset df
// by 2 pi df t at the observation instant t.
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace dbf {

struct SyncErrorModel {
  double phase_sigma = 0.0;        // rad
  double time_sigma = 0.0;         // s
  double freq_offset_sigma = 0.0;  // Hz
  double carrier = 3.5e9;          // Hz
  double observation_time = 0.5e-3;  // s, instant at which frequency offsets are evaluated

  void validate() const;
  /// Standard deviation of the total equivalent carrier phase error.
  double equivalent_phase_sigma() const;
  bool operator==(const SyncErrorModel&) const = default;
};

struct McResult {
  std::uint64_t trials = 0;
  double mean_gain = 0.0;
  double std_gain = 0.0;
  double standard_error = 0.0;
  std::map<double, double> quantiles;  // probability -> gain
  std::uint64_t seed = 0;

  bool operator==(const McResult&) const = default;
};

/// |sum exp(j e_i)|^2: coherent power of equal sources relative to one.
double coherent_gain(std::span<const double> phase_errors);

/// E[coherent_gain] for i.i.d. zero-mean Gaussian phase errors:
/// n + n (n - 1) exp(-sigma^2).
double analytic_expected_gain(int n, double phase_sigma);

/// Reproducible from `seed`; trial i draws from its own substream so its
/// sample does not depend on the total trial count.
McResult run_mc(const SyncErrorModel& model, int n, std::uint64_t trials, std::uint64_t seed);

/// Per-trial gains behind run_mc, in trial order.
std::vector<double> sample_gains(const SyncErrorModel& model, int n, std::uint64_t trials,
                                 std::uint64_t seed);

}  // namespace dbf

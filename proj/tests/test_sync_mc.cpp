// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "dbf/sync_mc.hpp"
#include "dbf/types.hpp"
#include "oracles.hpp"

using namespace dbf;
using dbf::test::gain_oracle;
using dbf::test::rel_err;

TEST_CASE("coherent_gain: examples") {
  CHECK(coherent_gain(std::array{0.0, 0.0, 0.0, 0.0}) == 16.0);
  CHECK(coherent_gain(std::array{0.0, kPi}) < 1e-30);
  CHECK(coherent_gain(std::array{0.0, kPi / 2}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(coherent_gain(std::span<const double>{}), std::invalid_argument);
}

TEST_CASE("coherent_gain: bounds, oracle, global phase invariance") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ph(-10, 10);
  std::uniform_int_distribution<int> count(1, 12);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<double> e(static_cast<std::size_t>(count(rng)));
    for (auto& x : e) x = ph(rng);
    const double n = static_cast<double>(e.size());
    const double g = coherent_gain(e);
    CHECK(g >= 0.0);
    CHECK(g <= n * n * (1 + 1e-12));
    CHECK(g == doctest::Approx(gain_oracle(e)).epsilon(1e-12));
    const double c = ph(rng);
    std::vector<double> shifted = e;
    for (auto& x : shifted) x += c;
    CHECK(std::abs(coherent_gain(shifted) - g) <= 1e-12 * n * n);
  }
  // Equal modulo 2 pi gives the maximum.
  CHECK(coherent_gain(std::array{0.3, 0.3 + 2 * kPi, 0.3 - 4 * kPi}) ==
        doctest::Approx(9.0).epsilon(1e-14));
}

TEST_CASE("analytic_expected_gain") {
  CHECK(analytic_expected_gain(4, 0.0) == 16.0);
  CHECK(analytic_expected_gain(2, 0.5) == doctest::Approx(2 + 2 * std::exp(-0.25)).epsilon(1e-15));
  CHECK(analytic_expected_gain(2, 0.5) == doctest::Approx(3.558).epsilon(1e-3));
  CHECK(analytic_expected_gain(5, 50.0) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK_THROWS_AS(analytic_expected_gain(0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(analytic_expected_gain(2, -0.1), std::invalid_argument);
}

TEST_CASE("run_mc: zero error gives n^2 exactly") {
  const McResult r = run_mc(SyncErrorModel{}, 3, 1000, 42);
  CHECK(r.mean_gain == 9.0);
  CHECK(r.std_gain == 0.0);
  for (const auto& [p, q] : r.quantiles) CHECK(q == 9.0);
}

TEST_CASE("run_mc: agrees with the analytic mean") {
  for (int n : {2, 3, 6}) {
    SyncErrorModel m;
    m.phase_sigma = 0.5;
    const McResult r = run_mc(m, n, 100000, 7);
    CHECK(std::abs(r.mean_gain - analytic_expected_gain(n, 0.5)) < 3 * r.standard_error);
    CHECK(r.mean_gain >= 0.0);
    CHECK(r.mean_gain <= n * n);
    CHECK(r.quantiles.at(0.05) <= r.quantiles.at(0.5));
    CHECK(r.quantiles.at(0.5) <= r.quantiles.at(0.95));
  }
}

TEST_CASE("run_mc: same seed is bit-identical, other seeds differ") {
  SyncErrorModel m;
  m.phase_sigma = 0.7;
  m.freq_offset_sigma = 20.0;
  CHECK(run_mc(m, 4, 5000, 99) == run_mc(m, 4, 5000, 99));
  CHECK(run_mc(m, 4, 5000, 99).mean_gain != run_mc(m, 4, 5000, 100).mean_gain);
}

TEST_CASE("run_mc: trial i does not depend on the trial count") {
  SyncErrorModel m;
  m.phase_sigma = 0.4;
  const auto few = sample_gains(m, 3, 100, 5);
  const auto many = sample_gains(m, 3, 1000, 5);
  for (std::size_t i = 0; i < few.size(); ++i) CHECK(few[i] == many[i]);
}

TEST_CASE("run_mc: timing error maps to carrier phase") {
  SyncErrorModel by_time;
  by_time.time_sigma = 1.0 / (2 * kPi * by_time.carrier);
  SyncErrorModel by_phase;
  by_phase.phase_sigma = 1.0;
  CHECK(by_time.equivalent_phase_sigma() == doctest::Approx(1.0).epsilon(1e-15));
  const auto a = sample_gains(by_time, 3, 2000, 11);
  const auto b = sample_gains(by_phase, 3, 2000, 11);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));

  SyncErrorModel by_freq;
  by_freq.freq_offset_sigma = 1.0 / (2 * kPi * by_freq.observation_time);
  CHECK(by_freq.equivalent_phase_sigma() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("run_mc: mean gain falls as phase error grows") {
  double prev = 1e300, prev_se = 0.0;
  for (double sigma : {0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0}) {
    SyncErrorModel m;
    m.phase_sigma = sigma;
    const McResult r = run_mc(m, 2, 20000, 3);
    CHECK(r.mean_gain <= prev + 3 * std::max(r.standard_error, prev_se));
    prev = r.mean_gain;
    prev_se = r.standard_error;
  }
}

TEST_CASE("run_mc: rejects bad inputs") {
  CHECK_THROWS_AS(run_mc(SyncErrorModel{}, 2, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(run_mc(SyncErrorModel{}, 0, 10, 1), std::invalid_argument);
  SyncErrorModel bad;
  bad.phase_sigma = -0.1;
  CHECK_THROWS_AS(run_mc(bad, 2, 10, 1), std::invalid_argument);
}

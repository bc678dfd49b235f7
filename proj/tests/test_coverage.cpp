// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "dbf/coverage.hpp"
#include "dbf/link_budget.hpp"
#include "oracles.hpp"

using namespace dbf;
using dbf::test::rel_err;

namespace {

constexpr double kF = 3.5e9;
constexpr double kAlt = 550e3;

// n sources at `tilt`, spread evenly in azimuth (starting at `az0`), all
// steering at the origin.
std::vector<SatelliteSource> ring(int n, double tilt, double az0 = 0.0) {
  std::vector<SatelliteSource> out;
  for (int i = 0; i < n; ++i) {
    const double az = az0 + 2 * kPi * i / n;
    out.push_back(SatelliteSource::steered_at(satellite_over({}, kAlt, tilt, az), {}));
  }
  return out;
}

GridSpec square(double extent, int cells) { return {GroundPoint{}, extent, extent, cells, cells}; }

double period_at(double tilt) { return fringe_period(wavelength(kF), tilt).period; }

double correlation(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::VectorXd da = a.array() - a.mean();
  const Eigen::VectorXd db = b.array() - b.mean();
  return da.dot(db) / (da.norm() * db.norm());
}

}  // namespace

TEST_CASE("fringe_period: examples and small-angle scaling") {
  const FringeGeometry g = fringe_period(wavelength(kF), deg_to_rad(0.1));
  CHECK(g.period == doctest::Approx(24.54).epsilon(1e-3));
  CHECK(g.width == doctest::Approx(12.27).epsilon(1e-3));
  CHECK(fringe_period(0.3, kPi / 6).period == doctest::Approx(0.3).epsilon(1e-14));
  const double p1 = fringe_period(0.1, 1e-3).period;
  const double p2 = fringe_period(0.1, 2e-3).period;
  CHECK(rel_err(p2, p1 / 2) < 1e-4);
  CHECK_THROWS_AS(fringe_period(0.1, 0.0), std::invalid_argument);
}

TEST_CASE("pfd_compensation: nadir, small steer, constant boresight density") {
  CHECK(pfd_compensation(0.0, kAlt, kAlt) == 1.0);
  const double t = deg_to_rad(0.1);
  const double oracle = 1.0 / std::pow(std::cos(t), 3);
  CHECK(rel_err(pfd_compensation(t, kAlt, kAlt / std::cos(t)), oracle) < 1e-14);
  CHECK(pfd_compensation(t, kAlt, kAlt / std::cos(t)) - 1.0 < 1e-5);
  CHECK_THROWS_AS(pfd_compensation(0.0, kAlt, 0.5 * kAlt), std::invalid_argument);

  // Single-source density at the steered target equals the nadir density.
  auto boresight_density = [](SatelliteSource s) {
    s.tx_power_scale = compensated_power_scale(s, 0.0);
    const FieldPhasor p = field_at_point(s, GroundPoint{}, kF);
    return time_average_poynting<double>(p.e_complex, p.h_complex()).norm();
  };
  const double nadir = boresight_density(ring(1, 0.0).front());
  for (double tilt_deg : {0.1, 1.0, 10.0, 30.0})
    CHECK(rel_err(boresight_density(ring(1, deg_to_rad(tilt_deg)).front()), nadir) < 1e-6);
}

TEST_CASE("render_coverage: a single source has no interference") {
  const CoverageGrid g = render_coverage(ring(1, deg_to_rad(0.5)), square(50, 32), kF);
  CHECK(((g.coherent - g.miso).array().abs() <= 1e-12 * g.miso.array()).all());
  CHECK(g.coherent.allFinite());
  CHECK((g.coherent.array() >= 0).all());
}

TEST_CASE("render_coverage: two-source fringes") {
  const double tilt = deg_to_rad(0.1);
  const double period = period_at(tilt);
  const CoverageGrid g = render_coverage(ring(2, tilt), square(128, 256), kF);

  CHECK(10 * std::log10(g.coherent.maxCoeff() / g.single_max) ==
        doctest::Approx(6.0206).epsilon(1e-3));
  CHECK(g.coherent.maxCoeff() <= 4 * g.single_max * (1 + 1e-9));

  const double width = measure_fringe_width(g);
  CHECK(std::abs(width - period / 2) <= g.spec.cell_x());

  // Baseline along x: fringes do not change along y.
  for (int j = 0; j + 1 < g.spec.ny; j += 17)
    CHECK(correlation(g.coherent.row(j).transpose(), g.coherent.row(j + 1).transpose()) > 0.999);

  // Rotating the pair by 90 degrees transposes the pattern.
  const CoverageGrid r = render_coverage(ring(2, tilt, kPi / 2), square(128, 256), kF);
  CHECK((r.coherent - g.coherent.transpose()).cwiseAbs().maxCoeff() <= 1e-6 * g.coherent.maxCoeff());
  CHECK(std::abs(measure_fringe_width(r) - width) <= 1e-6);
}

TEST_CASE("measure_fringe_width: oblique baselines") {
  const double tilt = deg_to_rad(0.1);
  const double period = period_at(tilt);
  for (double az_deg : {30.0, 45.0, 70.0}) {
    const CoverageGrid g =
        render_coverage(ring(2, tilt, deg_to_rad(az_deg)), square(128, 256), kF);
    CHECK(std::abs(measure_fringe_width(g) - period / 2) <= g.spec.cell_x());
  }
}

TEST_CASE("render_coverage: energy conservation over whole fringe periods") {
  for (double tilt_deg : {0.1, 0.5}) {
    const double tilt = deg_to_rad(tilt_deg);
    const double period = period_at(tilt);
    const GridSpec spec{GroundPoint{}, 4 * period, 2 * period, 128, 16};
    const CoverageGrid g = render_coverage(ring(2, tilt), spec, kF);
    CHECK(rel_err(g.coherent.mean(), g.miso.mean()) < 0.01);
  }
}

TEST_CASE("render_coverage: phase changes move the coherent layer only") {
  auto srcs = ring(3, deg_to_rad(0.3));
  const GridSpec spec = square(40, 48);
  const CoverageGrid a = render_coverage(srcs, spec, kF);
  srcs[1].initial_phase += 1.1;
  srcs[2].initial_phase -= 2.3;
  const CoverageGrid b = render_coverage(srcs, spec, kF);
  CHECK((a.miso - b.miso).cwiseAbs().maxCoeff() <= 1e-15 * a.miso.maxCoeff());
  CHECK((a.coherent - b.coherent).cwiseAbs().maxCoeff() > 0.1 * a.coherent.maxCoeff());
}

TEST_CASE("render_coverage: per-cell Cauchy-Schwarz bound") {
  const auto srcs = ring(5, deg_to_rad(0.4));
  const CoverageGrid g = render_coverage(srcs, square(30, 40), kF);
  const double n = static_cast<double>(srcs.size());
  CHECK((g.coherent.array() <= n * g.miso.array() * (1 + 1e-9)).all());
  CHECK(g.coherent.maxCoeff() <= n * n * g.single_max * (1 + 1e-9));
}

TEST_CASE("measure_spot: four-source lattice") {
  const double tilt = deg_to_rad(0.1);
  const double period = period_at(tilt);
  const CoverageGrid g = render_coverage(ring(4, tilt), square(128, 256), kF);
  const SpotMeasurement s = measure_spot(g);

  CHECK(10 * std::log10(s.peak_gain) == doctest::Approx(12.0412).epsilon(1e-3));
  CHECK(std::abs(s.peak_x) <= g.spec.cell_x());
  CHECK(std::abs(s.peak_y) <= g.spec.cell_y());

  // Field of the lattice is proportional to cos(kx) + cos(ky), k = pi / period.
  // Coherent >= MISO where cos(kx) >= 0 on the axis cut: one fringe period.
  CHECK(std::abs(s.diameter - period) <= g.spec.cell_x());
  const double k = kPi / period;
  const double half_power = 2 * std::acos(std::sqrt(2.0) - 1) / k;
  CHECK(std::abs(s.diameter_3db - half_power) <= g.spec.cell_x());
  CHECK(measure_spot_size(g) == s.diameter);

  // Spots sit on a square lattice rotated by 45 degrees: rows of spots one
  // fringe period apart, nearest neighbours sqrt(2) periods apart.
  const auto spots = find_spots(g, 0.9);
  REQUIRE(spots.size() >= 5);
  std::vector<double> rows;
  for (const auto& p : spots) rows.push_back(p.y);
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end(),
                         [&](double a, double b) { return std::abs(a - b) < period / 4; }),
             rows.end());
  REQUIRE(rows.size() >= 3);
  const double pitch = (rows.back() - rows.front()) / static_cast<double>(rows.size() - 1);
  CHECK(std::abs(pitch - period) <= g.spec.cell_y());
  double nearest = 1e300;
  for (const auto& p : spots)
    if (p.x != s.peak_x || p.y != s.peak_y)
      nearest = std::min(nearest, std::hypot(p.x - s.peak_x, p.y - s.peak_y));
  CHECK(std::abs(nearest - std::sqrt(2.0) * period) <= 2 * g.spec.cell_x());
}

TEST_CASE("measure_spot: halving the tilt doubles the diameter") {
  const double tilt = deg_to_rad(0.2);
  const SpotMeasurement a = measure_spot(render_coverage(ring(4, tilt), square(64, 256), kF));
  const SpotMeasurement b = measure_spot(render_coverage(ring(4, tilt / 2), square(128, 256), kF));
  CHECK(rel_err(b.diameter, 2 * a.diameter) < 0.05);
  CHECK(rel_err(b.diameter_3db, 2 * a.diameter_3db) < 0.05);
}

TEST_CASE("render_coverage and measurements: failure modes") {
  const auto pair = ring(2, deg_to_rad(0.1));
  CHECK_THROWS_AS(render_coverage(pair, square(0, 10), kF), std::invalid_argument);
  CHECK_THROWS_AS(render_coverage(pair, GridSpec{GroundPoint{}, 10, 10, 0, 10}, kF),
                  std::invalid_argument);
  CHECK_THROWS_AS(render_coverage({}, square(10, 10), kF), std::invalid_argument);
  // Cells wider than a quarter fringe period are refused.
  CHECK_THROWS_AS(render_coverage(pair, square(128, 16), kF), std::invalid_argument);
  CoverageOptions loose;
  loose.aliasing_guard = false;
  CHECK_NOTHROW(render_coverage(pair, square(128, 16), kF, loose));

  // Too small a window for three crests.
  CHECK_THROWS_AS(measure_fringe_width(render_coverage(pair, square(30, 64), kF)),
                  std::runtime_error);
  // The central spot does not fit in a window narrower than the spot.
  CHECK_THROWS_AS(measure_spot(render_coverage(ring(4, deg_to_rad(0.1)), square(12, 32), kF)),
                  std::runtime_error);
}

// SPDX-License-Identifier: Apache-2.0
#include "dbf/doppler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dbf {

void PassGeometry::validate() const {
  if (!(altitude > 0.0)) throw std::invalid_argument("doppler.altitude must be > 0");
  if (!(max_elevation > 0.0 && max_elevation <= kPi / 2))
    throw std::invalid_argument("doppler.max_elevation must lie in (0, pi/2]");
  if (!(carrier > 0.0)) throw std::invalid_argument("doppler.carrier must be > 0");
  for (double t : time_grid)
    if (!std::isfinite(t)) throw std::invalid_argument("doppler.time_grid must be finite");
}

double orbital_speed(double altitude, const EarthModel& earth) {
  if (!(altitude > 0.0)) throw std::invalid_argument("altitude must be > 0");
  return std::sqrt(earth.gravitational_parameter / (earth.earth_radius + altitude));
}

double altitude_for_speed(double speed, const EarthModel& earth) {
  if (!(speed > 0.0)) throw std::invalid_argument("speed must be > 0");
  return earth.gravitational_parameter / (speed * speed) - earth.earth_radius;
}

double angular_rate(double altitude, const EarthModel& earth) {
  return orbital_speed(altitude, earth) / (earth.earth_radius + altitude);
}

double cross_track_angle(const PassGeometry& pass, const EarthModel& earth) {
  pass.validate();
  const double ratio = earth.earth_radius / (earth.earth_radius + pass.altitude);
  return std::acos(ratio * std::cos(pass.max_elevation)) - pass.max_elevation;
}

namespace {

// Orbit in the x-y plane of an Earth-centred frame, satellite at
// r (cos wt, sin wt, 0); receiver at re (cos g, 0, sin g). Then
// d^2 = r^2 + re^2 - 2 r re cos(g) cos(wt).
struct PassFrame {
  double r;
  double re;
  double cos_g;
  double omega;
};

PassFrame frame_of(const PassGeometry& pass, const EarthModel& earth) {
  return {earth.earth_radius + pass.altitude, earth.earth_radius,
          std::cos(cross_track_angle(pass, earth)), angular_rate(pass.altitude, earth)};
}

}  // namespace

double visible_half_duration(const PassGeometry& pass, const EarthModel& earth) {
  const PassFrame f = frame_of(pass, earth);
  const double c = std::clamp(f.re / (f.r * f.cos_g), -1.0, 1.0);
  return std::acos(c) / f.omega;
}

PassGeometry visible_pass(double altitude, double max_elevation, double carrier, int samples,
                          const EarthModel& earth) {
  if (samples < 2) throw std::invalid_argument("samples must be >= 2");
  PassGeometry pass{altitude, max_elevation, carrier, {}};
  const double half = visible_half_duration(pass, earth);
  pass.time_grid.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    // Symmetric about zero so that mirrored samples are exact negatives.
    const double u = (2.0 * i - (samples - 1)) / static_cast<double>(samples - 1);
    pass.time_grid.push_back(u * half);
  }
  return pass;
}

double pass_slant_range(const PassGeometry& pass, double t, const EarthModel& earth) {
  const PassFrame f = frame_of(pass, earth);
  const double d2 = f.r * f.r + f.re * f.re - 2.0 * f.r * f.re * f.cos_g * std::cos(f.omega * t);
  return std::sqrt(std::max(d2, 0.0));
}

double pass_elevation(const PassGeometry& pass, double t, const EarthModel& earth) {
  const PassFrame f = frame_of(pass, earth);
  const double cos_central = f.cos_g * std::cos(f.omega * t);
  const double sin_central = std::sqrt(std::max(0.0, 1.0 - cos_central * cos_central));
  return std::atan2(cos_central - f.re / f.r, sin_central);
}

double radial_velocity(const PassGeometry& pass, double t, const EarthModel& earth) {
  if (!pass.time_grid.empty()) {
    const auto [lo, hi] = std::minmax_element(pass.time_grid.begin(), pass.time_grid.end());
    if (t < *lo || t > *hi) throw std::invalid_argument("t lies outside the pass time grid");
  }
  const PassFrame f = frame_of(pass, earth);
  const double d = pass_slant_range(pass, t, earth);
  if (d == 0.0) return 0.0;
  return f.r * f.re * f.cos_g * f.omega * std::sin(f.omega * t) / d;
}

double doppler_shift(double frequency, double radial_velocity) {
  return -frequency * radial_velocity / FreeSpaceConstants::light_speed;
}

std::vector<ShiftSample> precompensate(const std::vector<ShiftSample>& shift_profile) {
  std::vector<ShiftSample> out;
  out.reserve(shift_profile.size());
  for (const auto& s : shift_profile) {
    if (!std::isfinite(s.t) || !std::isfinite(s.hz))
      throw std::invalid_argument("shift profile must be finite");
    out.push_back({s.t, -s.hz});
  }
  return out;
}

std::vector<DopplerSample> doppler_profile(const PassGeometry& pass, const EarthModel& earth) {
  pass.validate();
  std::vector<DopplerSample> out;
  out.reserve(pass.time_grid.size());
  for (double t : pass.time_grid) {
    DopplerSample s;
    s.t = t;
    s.elevation = pass_elevation(pass, t, earth);
    s.slant_range = pass_slant_range(pass, t, earth);
    s.radial_velocity = radial_velocity(pass, t, earth);
    s.doppler = doppler_shift(pass.carrier, s.radial_velocity);
    out.push_back(s);
  }
  return out;
}

}  // namespace dbf

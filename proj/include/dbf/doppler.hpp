// SPDX-License-Identifier: Apache-2.0
//
// Geometric Doppler analysis of a circular-orbit pass over a ground
// receiver. Earth rotation is neglected. Time t = 0 is the instant of
// closest approach.
#pragma once

#include <vector>

#include "dbf/geometry.hpp"

namespace dbf {

struct PassGeometry {
  double altitude = 550e3;         // m
  double max_elevation = kPi / 2;  // rad, elevation at closest approach
  double carrier = 3.5e9;          // Hz
  std::vector<double> time_grid;   // s

  void validate() const;
  bool operator==(const PassGeometry&) const = default;
};

/// Circular-orbit speed sqrt(mu / (Re + h)).
double orbital_speed(double altitude, const EarthModel& earth = {});

/// Altitude of the circular orbit flown at `speed`.
double altitude_for_speed(double speed, const EarthModel& earth = {});

double angular_rate(double altitude, const EarthModel& earth = {});

/// Cross-track central angle between ground track and receiver that yields
/// the pass's maximum elevation.
double cross_track_angle(const PassGeometry& pass, const EarthModel& earth = {});

/// Half-duration of the part of the pass above the horizon.
double visible_half_duration(const PassGeometry& pass, const EarthModel& earth = {});

/// Pass sampled uniformly over its visible window.
PassGeometry visible_pass(double altitude, double max_elevation, double carrier, int samples,
                          const EarthModel& earth = {});

double pass_slant_range(const PassGeometry& pass, double t, const EarthModel& earth = {});
double pass_elevation(const PassGeometry& pass, double t, const EarthModel& earth = {});

/// d(slant range)/dt, positive while receding.
double radial_velocity(const PassGeometry& pass, double t, const EarthModel& earth = {});

/// -f v / c; approaching (v < 0) raises the received frequency.
double doppler_shift(double frequency, double radial_velocity);

struct ShiftSample {
  double t = 0.0;   // s
  double hz = 0.0;
};

/// Transmit-side frequency offsets that cancel `shift_profile` at the
/// receiver.
std::vector<ShiftSample> precompensate(const std::vector<ShiftSample>& shift_profile);

struct DopplerSample {
  double t = 0.0;
  double elevation = 0.0;        // rad
  double slant_range = 0.0;      // m
  double radial_velocity = 0.0;  // m/s
  double doppler = 0.0;          // Hz
};

std::vector<DopplerSample> doppler_profile(const PassGeometry& pass, const EarthModel& earth = {});

}  // namespace dbf

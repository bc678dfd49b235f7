// SPDX-License-Identifier: Apache-2.0
//
// Orbital and ground geometry in the receiver's local tangent frame.
//
// Frame convention: the receiver (UE) sits at the origin, z points up along
// the local vertical and x runs east along the reference orbit trace. The
// Earth's centre is at (0, 0, -earth_radius).
#pragma once

#include <cmath>

#include "dbf/types.hpp"

namespace dbf {

struct EarthModel {
  double earth_radius = 6'371'000.0;                 // m
  double gravitational_parameter = 3.986004418e14;   // m^3/s^2

  Vector3d centre() const { return {0.0, 0.0, -earth_radius}; }
  void validate() const;
  bool operator==(const EarthModel&) const = default;
};

/// Angles of the Earth-centre / receiver / satellite triangle.
///
/// `central_angle_theta` is measured at the Earth's centre, `off_nadir_alpha`
/// at the satellite. Their sum is the zenith angle of the satellite seen from
/// the receiver, which is also the tilt of the incoming field's
/// decomposition axes.
struct SatGeometry {
  double central_angle_theta = 0.0;
  double off_nadir_alpha = 0.0;
  double decomposition_beta = 0.0;
  double slant_range = 0.0;
};

struct SatelliteState {
  Vector3d position = Vector3d::Zero();   // m, local frame
  Vector3d velocity = Vector3d::Zero();   // m/s
  double orbit_plane_tilt_xi = 0.0;       // rad in [0, pi/2], trace vs x axis

  void validate() const;
};

/// Minimum altitude for a non-degenerate satellite.
inline constexpr double kMinAltitude = 1.0;  // m

template <typename Scalar>
Scalar slant_range(const Vector3<Scalar>& a, const Vector3<Scalar>& b) {
  return (a - b).norm();
}

inline double slant_range(const SatelliteState& sat, const GroundPoint& p) {
  return slant_range<double>(sat.position, p.vec());
}

SatGeometry incidence_geometry(const SatelliteState& sat, const GroundPoint& p,
                               const EarthModel& earth = {});

/// Distance between two satellites at `altitude` that steer by
/// +/- `steer_half_angle` onto one ground point.
double lateral_separation(double altitude, double steer_half_angle);

/// Ground radius of the -3 dB contour of a nadir-pointing beam. The default
/// is the flat tangent-plane value; `spherical` intersects the beam edge ray
/// with the Earth sphere and returns the surface arc length instead.
double footprint_radius(double altitude, double full_beamwidth,
                        const EarthModel& earth = {}, bool spherical = false);

/// Depth below the source baseline at which two symmetric beams, each tilted
/// by `tilt` from the vertical, cross.
double focus_depth(double source_separation, double tilt);

/// Satellite at `altitude` above `target` (flat local frame), displaced so
/// that its line of sight to the target is `tilt` off the vertical, on the
/// side given by `azimuth` (from +x towards +y).
SatelliteState satellite_over(const GroundPoint& target, double altitude,
                              double tilt, double azimuth,
                              double orbit_plane_tilt_xi = 0.0);

}  // namespace dbf

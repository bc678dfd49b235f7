// SPDX-License-Identifier: Apache-2.0
#include "dbf/geometry.hpp"

#include <stdexcept>
#include <string>

namespace dbf {

void EarthModel::validate() const {
  if (!(earth_radius > 0.0) || !std::isfinite(earth_radius))
    throw std::invalid_argument("earth_radius must be > 0");
  if (!(gravitational_parameter > 0.0) || !std::isfinite(gravitational_parameter))
    throw std::invalid_argument("gravitational_parameter must be > 0");
}

void SatelliteState::validate() const {
  if (!position.allFinite() || !velocity.allFinite())
    throw std::invalid_argument("satellite state must be finite");
  if (position.norm() <= 0.0)
    throw std::invalid_argument("satellite position must be non-zero");
  if (!(orbit_plane_tilt_xi >= 0.0 && orbit_plane_tilt_xi <= kPi / 2))
    throw std::invalid_argument("orbit_plane_tilt_xi must lie in [0, pi/2]");
}

SatGeometry incidence_geometry(const SatelliteState& sat, const GroundPoint& p,
                               const EarthModel& earth) {
  const Vector3d centre = earth.centre();
  const Vector3d sat_radial = sat.position - centre;
  const Vector3d ue_radial = p.vec() - centre;
  const double r_sat = sat_radial.norm();
  const double r_ue = ue_radial.norm();
  if (!std::isfinite(r_sat) || r_sat - r_ue < kMinAltitude)
    throw std::invalid_argument("satellite must be at least 1 m above the receiver's surface");

  SatGeometry g;
  // atan2 of cross and dot is well conditioned at both small and large angles.
  g.central_angle_theta =
      std::atan2(sat_radial.cross(ue_radial).norm(), sat_radial.dot(ue_radial));
  const double s = std::sin(g.central_angle_theta);
  const double c = std::cos(g.central_angle_theta);
  // Triangle solve: the receiver sits at (r_ue sin(theta), r_sat - r_ue cos(theta))
  // as seen from the satellite along its nadir line.
  g.off_nadir_alpha = std::atan2(r_ue * s, r_sat - r_ue * c);
  g.decomposition_beta = g.off_nadir_alpha + g.central_angle_theta;
  g.slant_range = slant_range<double>(sat.position, p.vec());
  return g;
}

double lateral_separation(double altitude, double steer_half_angle) {
  if (!(altitude > 0.0)) throw std::invalid_argument("altitude must be > 0");
  if (!(steer_half_angle >= 0.0 && steer_half_angle < kPi / 2))
    throw std::invalid_argument("steer_half_angle must lie in [0, pi/2)");
  return 2.0 * altitude * std::tan(steer_half_angle);
}

double footprint_radius(double altitude, double full_beamwidth,
                        const EarthModel& earth, bool spherical) {
  if (!(altitude > 0.0)) throw std::invalid_argument("altitude must be > 0");
  if (!(full_beamwidth > 0.0 && full_beamwidth < kPi))
    throw std::invalid_argument("full_beamwidth must lie in (0, pi)");
  const double half = 0.5 * full_beamwidth;
  if (!spherical) return altitude * std::tan(half);

  const double re = earth.earth_radius;
  const double rs = re + altitude;
  const double sin_incidence = rs / re * std::sin(half);
  if (sin_incidence >= 1.0)
    throw std::invalid_argument("beam edge misses the Earth");
  const double central = std::asin(sin_incidence) - half;
  return re * central;
}

double focus_depth(double source_separation, double tilt) {
  if (!(tilt > 0.0 && tilt < kPi / 2))
    throw std::invalid_argument("tilt must lie in (0, pi/2)");
  return 0.5 * source_separation / std::tan(tilt);
}

SatelliteState satellite_over(const GroundPoint& target, double altitude,
                              double tilt, double azimuth,
                              double orbit_plane_tilt_xi) {
  if (!(altitude >= kMinAltitude))
    throw std::invalid_argument("altitude must be at least 1 m");
  if (!(tilt >= 0.0 && tilt < kPi / 2))
    throw std::invalid_argument("tilt must lie in [0, pi/2)");
  const double offset = altitude * std::tan(tilt);
  SatelliteState s;
  s.position = target.vec() +
               Vector3d(offset * std::cos(azimuth), offset * std::sin(azimuth), altitude);
  s.orbit_plane_tilt_xi = orbit_plane_tilt_xi;
  s.validate();
  return s;
}

}  // namespace dbf

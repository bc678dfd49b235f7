// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dbf/geometry.hpp"

namespace dbf {

/// One coherent emitter: an orbiting satellite with a steerable beam.
struct SatelliteSource {
  SatelliteState state;
  Vector3d steer_direction = -Vector3d::UnitZ();  // unit, boresight
  double tx_power_scale = 1.0;
  double initial_phase = 0.0;                     // rad
  double beamwidth = deg_to_rad(2.5);             // rad, full -3 dB width

  void validate() const;

  /// Source whose boresight points from `state` at `target`.
  static SatelliteSource steered_at(const SatelliteState& state, const GroundPoint& target,
                                    double initial_phase = 0.0, double tx_power_scale = 1.0,
                                    double beamwidth = deg_to_rad(2.5));

  /// Angle between boresight and the local vertical (downwards).
  double steer_off_nadir() const;
};

}  // namespace dbf

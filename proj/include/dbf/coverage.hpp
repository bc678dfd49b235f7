// SPDX-License-Identifier: Apache-2.0
//
// Ground coverage rasters of several coherent steered beams.
#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "dbf/em.hpp"

namespace dbf {

/// Raster window on the ground plane z = center.z. Cells are sampled at
/// their centres.
struct GridSpec {
  GroundPoint center;
  double extent_x = 0.0;  // m
  double extent_y = 0.0;  // m
  int nx = 0;
  int ny = 0;

  void validate() const;
  double cell_x() const { return extent_x / nx; }
  double cell_y() const { return extent_y / ny; }
  double x_at(int i) const { return center.x - 0.5 * extent_x + (i + 0.5) * cell_x(); }
  double y_at(int j) const { return center.y - 0.5 * extent_y + (j + 0.5) * cell_y(); }
  bool operator==(const GridSpec&) const = default;
};

struct CoverageOptions {
  bool pfd_compensation = true;
  FieldReference field;
  bool aliasing_guard = true;  // refuse cells wider than a quarter fringe period
};

/// Linear power densities. Matrices are indexed (j, i) = (y row, x column).
struct CoverageGrid {
  GridSpec spec;
  Eigen::MatrixXd coherent;
  Eigen::MatrixXd miso;
  double single_max = 0.0;  // W/m^2, strongest single-source boresight density
  int sources = 0;
};

/// Multiplicative transmit-power scale that holds the boresight power flux
/// density constant when the beam is steered: (slant/altitude)^2 undoes the
/// extra spreading and cos^-q(steer) the scan loss of the array.
double pfd_compensation(double steer_off_nadir, double altitude, double slant,
                        double scan_loss_exponent = 1.0);

/// Power-scale applied to `source` by the renderer when compensation is on.
double compensated_power_scale(const SatelliteSource& source, double ground_z,
                               double scan_loss_exponent = 1.0);

/// Shortest two-beam interference period over all source pairs, evaluated
/// at `at`. Infinite for a single source.
double min_fringe_period(std::span<const SatelliteSource> sources, const GroundPoint& at,
                         double frequency);

CoverageGrid render_coverage(std::span<const SatelliteSource> sources, const GridSpec& grid,
                             double frequency, const CoverageOptions& options = {});

struct FringeGeometry {
  double period = 0.0;  // m, crest to crest
  double width = 0.0;   // m, bright fringe, period / 2
};

/// Period lambda / (2 sin(half_angle)) of two plane waves meeting at
/// +/- half_angle.
FringeGeometry fringe_period(double lambda, double half_angle);

/// Bright-fringe width of a two-source raster: half the fringe period, from
/// the crest spacing along the better-resolved axis and the fringe orientation.
double measure_fringe_width(const CoverageGrid& grid);

struct SpotMeasurement {
  double diameter = 0.0;       // m, extent where coherent >= MISO, mean of x and y cuts
  double diameter_x = 0.0;
  double diameter_y = 0.0;
  double diameter_3db = 0.0;   // m, half-power width, mean of x and y cuts
  double peak_x = 0.0;
  double peak_y = 0.0;
  double peak_gain = 0.0;      // coherent peak / single_max
};

/// Measures the spot nearest the grid centre of a multi-source raster.
SpotMeasurement measure_spot(const CoverageGrid& grid);

inline double measure_spot_size(const CoverageGrid& grid) { return measure_spot(grid).diameter; }

/// Positions (x, y) of interior local maxima whose coherent density is at
/// least `fraction` of the raster maximum.
std::vector<GroundPoint> find_spots(const CoverageGrid& grid, double fraction = 0.9);

}  // namespace dbf

// SPDX-License-Identifier: Apache-2.0
//
// Scenario files: a YAML document whose keys carry their units
// (altitude_km, tilt_deg, ...). ScenarioFile mirrors the file in those
// units so that serialising and re-parsing reproduces it exactly; the
// accessor functions convert to SI and radians for the numerical modules.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dbf/coverage.hpp"
#include "dbf/doppler.hpp"
#include "dbf/link_budget.hpp"
#include "dbf/sync_mc.hpp"

namespace dbf {

inline constexpr int kScenarioSchemaVersion = 1;

struct EarthSection {
  double radius_km = 6371.0;
  double mu_m3_s2 = 3.986004418e14;
  bool operator==(const EarthSection&) const = default;
};

struct BudgetSection {
  double distance_km = 550.0;
  double eirp_dbw = 36.7;
  double tx_antenna_gain_dbi = 37.1;
  double rx_antenna_gain_dbi = 0.0;
  double atmospheric_rain_loss_db = 5.0;
  double tx_losses_db = 2.0;
  double rx_losses_db = 2.0;
  double sensitivity_dbm = -96.5;
  bool operator==(const BudgetSection&) const = default;
};

/// A source is placed either by altitude + tilt + azimuth about the grid
/// centre, or by an explicit position. Either way it steers at the grid
/// centre.
struct SourceSection {
  double altitude_km = 550.0;
  double tilt_deg = 0.0;
  double azimuth_deg = 0.0;
  std::optional<std::array<double, 3>> position_m;
  double phase_deg = 0.0;
  double power_scale = 1.0;
  double beamwidth_deg = 2.5;
  double orbit_tilt_deg = 0.0;
  bool operator==(const SourceSection&) const = default;
};

struct GridSection {
  std::array<double, 2> center_m{0.0, 0.0};
  std::array<double, 2> extent_m{128.0, 128.0};
  std::array<int, 2> cells{256, 256};
  bool pfd_compensation = true;
  double scan_loss_exponent = 1.0;
  double e0_v_per_m = 1.0;
  double reference_range_km = 550.0;
  bool operator==(const GridSection&) const = default;
};

struct SyncSection {
  int satellites = 2;
  std::uint64_t trials = 100000;
  double phase_sigma_rad = 0.0;
  double time_sigma_s = 0.0;
  double freq_offset_sigma_hz = 0.0;
  double observation_time_s = 0.5e-3;
  std::vector<double> sweep_phase_sigma_rad;
  bool operator==(const SyncSection&) const = default;
};

struct DopplerSection {
  double altitude_km = 550.0;
  double max_elevation_deg = 90.0;
  int samples = 201;
  bool operator==(const DopplerSection&) const = default;
};

struct ProfileSection {
  double separation_wavelengths = 10.0;
  double tilt_deg = 30.0;
  double z_from_mm = -200.0;
  double z_to_mm = -770.0;
  int samples = 115;
  bool operator==(const ProfileSection&) const = default;
};

struct EnhanceSection {
  int n_max = 8;
  int m = 0;
  double xi_deg = 0.0;
  bool operator==(const EnhanceSection&) const = default;
};

struct ScenarioFile {
  int schema_version = kScenarioSchemaVersion;
  double frequency_hz = 3.5e9;
  EarthSection earth;
  std::optional<BudgetSection> budget;
  std::vector<SourceSection> sources;
  std::optional<GridSection> grid;
  std::optional<SyncSection> sync;
  std::optional<DopplerSection> doppler;
  std::optional<ProfileSection> profile;
  std::optional<EnhanceSection> enhance;
  bool operator==(const ScenarioFile&) const = default;
};

/// Thrown by parse_scenario with every problem found, not just the first.
class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

ScenarioFile parse_scenario(std::string_view text);
ScenarioFile load_scenario(const std::string& path);

/// Canonical YAML rendering: fixed key order, shortest round-trip numbers.
std::string serialize_scenario(const ScenarioFile& s);

/// SHA-256 hex digest of the canonical rendering; independent of key order
/// and formatting of the source text.
std::string scenario_hash(const ScenarioFile& s);

/// Problems a command would hit with this scenario. `command` is one of
/// budget, enhance, profile, coverage, sync-mc, doppler; empty checks only
/// the sections that are present.
std::vector<std::string> validate_scenario(const ScenarioFile& s, std::string_view command = {});

EarthModel earth_model(const ScenarioFile& s);
LinkBudgetParams budget_params(const ScenarioFile& s);
GridSpec grid_spec(const ScenarioFile& s);
CoverageOptions coverage_options(const ScenarioFile& s);
std::vector<SatelliteSource> satellite_sources(const ScenarioFile& s);
SyncErrorModel sync_model(const ScenarioFile& s);
PassGeometry pass_geometry(const ScenarioFile& s);

}  // namespace dbf

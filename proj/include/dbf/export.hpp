// SPDX-License-Identifier: Apache-2.0
//
// File writers. Every numeric column uses a fixed decimal format so outputs
// are byte-identical across runs with identical inputs.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "dbf/coverage.hpp"
#include "dbf/doppler.hpp"
#include "dbf/em.hpp"
#include "dbf/sync_mc.hpp"

namespace dbf {

inline constexpr const char* kToolVersion = "1.0.0";

/// Floor applied to zero or negative densities before taking dB.
inline constexpr double kDbFloor = -100.0;

double relative_db(double value, double reference);

/// x_m, y_m, coherent_db, miso_db; dB relative to grid.single_max.
void write_coverage_csv(const std::filesystem::path& path, const CoverageGrid& grid);

struct GreymapRange {
  double db_min = 0.0;
  double db_max = 0.0;
};

/// Range used for greymap export: the coherent maximum and 40 dB below it.
GreymapRange default_greymap_range(const CoverageGrid& grid);

/// 16-bit binary PGM (P5, maxval 65535, big-endian) of one layer in dB,
/// first row at the largest y. `layer` is "coherent" or "miso".
void write_coverage_pgm(const std::filesystem::path& path, const CoverageGrid& grid,
                        const std::string& layer, const GreymapRange& range);

/// Sidecar text describing a greymap: extent, dB range and scenario hash.
void write_greymap_metadata(const std::filesystem::path& path, const CoverageGrid& grid,
                            const GreymapRange& range, const std::string& scenario_hash,
                            const std::vector<std::string>& images);

struct SweepRow {
  double sigma = 0.0;
  McResult result;
};

/// sigma, mean_gain_db, p05_db, p95_db with the seed in a comment header.
void write_sync_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows,
                          int satellites, std::uint64_t seed);

/// t_s, elevation_deg, slant_range_m, radial_velocity_mps, doppler_hz.
void write_doppler_csv(const std::filesystem::path& path,
                       const std::vector<DopplerSample>& samples);

/// z_mm, single_db, miso_db, coherent_db.
void write_profile_csv(const std::filesystem::path& path,
                       const std::vector<ProfileSample>& samples);

struct RunManifest {
  std::string command;
  std::string scenario_hash;
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;
  std::string tool_version = kToolVersion;
};

/// YAML manifest; `created_utc` is the only field that varies between
/// identical runs.
void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

}  // namespace dbf

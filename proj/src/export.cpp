// SPDX-License-Identifier: Apache-2.0
#include "dbf/export.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace dbf {

namespace {

std::ofstream open_out(const std::filesystem::path& path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

// printf-style formatting; iostream locale state cannot leak into output.
template <typename... Args>
std::string fmt(const char* f, Args... args) {
  char buf[256];
  const int n = std::snprintf(buf, sizeof buf, f, args...);
  return std::string(buf, static_cast<std::size_t>(std::max(n, 0)));
}

double gain_db(double ratio) { return ratio > 0.0 ? std::max(10.0 * std::log10(ratio), kDbFloor) : kDbFloor; }

}  // namespace

double relative_db(double value, double reference) {
  if (!(reference > 0.0)) throw std::invalid_argument("dB reference must be > 0");
  return gain_db(value / reference);
}

void write_coverage_csv(const std::filesystem::path& path, const CoverageGrid& grid) {
  auto out = open_out(path);
  out << "x_m,y_m,coherent_db,miso_db\n";
  for (int j = 0; j < grid.spec.ny; ++j)
    for (int i = 0; i < grid.spec.nx; ++i)
      out << fmt("%.3f,%.3f,%.4f,%.4f\n", grid.spec.x_at(i), grid.spec.y_at(j),
                 relative_db(grid.coherent(j, i), grid.single_max),
                 relative_db(grid.miso(j, i), grid.single_max));
}

GreymapRange default_greymap_range(const CoverageGrid& grid) {
  const double top = relative_db(grid.coherent.maxCoeff(), grid.single_max);
  return {top - 40.0, top};
}

void write_coverage_pgm(const std::filesystem::path& path, const CoverageGrid& grid,
                        const std::string& layer, const GreymapRange& range) {
  const Eigen::MatrixXd* data = nullptr;
  if (layer == "coherent") data = &grid.coherent;
  else if (layer == "miso") data = &grid.miso;
  else throw std::invalid_argument("unknown raster layer '" + layer + "'");
  if (!(range.db_max > range.db_min)) throw std::invalid_argument("greymap range is empty");

  auto out = open_out(path, true);
  out << "P5\n" << grid.spec.nx << " " << grid.spec.ny << "\n65535\n";
  std::vector<unsigned char> row(static_cast<std::size_t>(grid.spec.nx) * 2);
  for (int j = grid.spec.ny - 1; j >= 0; --j) {
    for (int i = 0; i < grid.spec.nx; ++i) {
      const double db = relative_db((*data)(j, i), grid.single_max);
      const double t = std::clamp((db - range.db_min) / (range.db_max - range.db_min), 0.0, 1.0);
      const auto v = static_cast<std::uint16_t>(std::lround(t * 65535.0));
      row[2 * static_cast<std::size_t>(i)] = static_cast<unsigned char>(v >> 8);
      row[2 * static_cast<std::size_t>(i) + 1] = static_cast<unsigned char>(v & 0xff);
    }
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
  }
}

void write_greymap_metadata(const std::filesystem::path& path, const CoverageGrid& grid,
                            const GreymapRange& range, const std::string& scenario_hash,
                            const std::vector<std::string>& images) {
  auto out = open_out(path);
  out << "format: pgm-p5-16bit-big-endian\n";
  out << "images:\n";
  for (const auto& im : images) out << "  - " << im << "\n";
  out << "row_order: y_descending\n";
  out << fmt("width: %d\nheight: %d\n", grid.spec.nx, grid.spec.ny);
  out << fmt("center_m: [%.3f, %.3f]\n", grid.spec.center.x, grid.spec.center.y);
  out << fmt("extent_m: [%.3f, %.3f]\n", grid.spec.extent_x, grid.spec.extent_y);
  out << fmt("db_min: %.4f\ndb_max: %.4f\n", range.db_min, range.db_max);
  out << "db_reference: single_source_peak\n";
  out << fmt("single_max_w_m2: %.9e\n", grid.single_max);
  out << "scenario_hash: " << scenario_hash << "\n";
}

void write_sync_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows,
                          int satellites, std::uint64_t seed) {
  auto out = open_out(path);
  out << "# seed=" << seed << " satellites=" << satellites << "\n";
  out << "sigma_rad,mean_gain_db,p05_db,p95_db\n";
  for (const auto& r : rows)
    out << fmt("%.6f,%.6f,%.6f,%.6f\n", r.sigma, gain_db(r.result.mean_gain),
               gain_db(r.result.quantiles.at(0.05)), gain_db(r.result.quantiles.at(0.95)));
}

void write_doppler_csv(const std::filesystem::path& path,
                       const std::vector<DopplerSample>& samples) {
  auto out = open_out(path);
  out << "t_s,elevation_deg,slant_range_m,radial_velocity_mps,doppler_hz\n";
  for (const auto& s : samples)
    out << fmt("%.6f,%.6f,%.3f,%.6f,%.3f\n", s.t, rad_to_deg(s.elevation), s.slant_range,
               s.radial_velocity, s.doppler);
}

void write_profile_csv(const std::filesystem::path& path,
                       const std::vector<ProfileSample>& samples) {
  auto out = open_out(path);
  out << "z_mm,single_db,miso_db,coherent_db\n";
  for (const auto& s : samples)
    out << fmt("%.3f,%.4f,%.4f,%.4f\n", s.z * 1e3, s.single_db, s.miso_db, s.coherent_db);
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
  auto out = open_out(path);
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
  out << "command: " << m.command << "\n";
  out << "scenario_hash: " << m.scenario_hash << "\n";
  out << "seed: " << m.seed << "\n";
  out << "tool_version: " << m.tool_version << "\n";
  out << "outputs:\n";
  for (const auto& o : m.outputs) out << "  - " << o << "\n";
  out << "created_utc: " << stamp << "\n";
}

}  // namespace dbf

// SPDX-License-Identifier: Apache-2.0
#include "dbf/scenario.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <openssl/evp.h>
#include <yaml-cpp/yaml.h>

namespace dbf {

ScenarioError::ScenarioError(std::vector<std::string> errors)
    : std::runtime_error([&] {
        std::string msg = "invalid scenario:";
        for (const auto& e : errors) msg += " " + e + ";";
        return msg;
      }()),
      errors_(std::move(errors)) {}

namespace {

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}


class Reader {
 public:
  explicit Reader(std::vector<std::string>& errors) : errors_(errors) {}

  void error(const std::string& path, const std::string& what) {
    errors_.push_back(path + ": " + what);
  }

  bool is_map(const YAML::Node& n, const std::string& path) {
    if (!n.IsMap()) {
      error(path, "must be a mapping");
      return false;
    }
    return true;
  }

  void allow_keys(const YAML::Node& n, std::initializer_list<std::string_view> keys,
                  const std::string& prefix) {
    const std::set<std::string_view> allowed(keys);
    for (const auto& kv : n) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.contains(key)) error(prefix + key, "unknown key");
    }
  }

  template <typename T>
  void get(const YAML::Node& map, const std::string& key, T& out, const std::string& prefix,
           std::function<bool(const T&)> ok = {}, const char* constraint = nullptr) {
    const YAML::Node n = map[key];
    if (!n) return;
    const std::string path = prefix + key;
    try {
      T v = n.as<T>();
      if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(v)) {
          error(path, "must be finite");
          return;
        }
      }
      if (ok && !ok(v)) {
        std::ostringstream msg;
        msg << "must be " << constraint << " (got " << n.as<std::string>() << ")";
        error(path, msg.str());
        return;
      }
      out = v;
    } catch (const YAML::Exception&) {
      error(path, "has the wrong type");
    }
  }

  template <typename T, std::size_t N>
  void get_array(const YAML::Node& map, const std::string& key, std::array<T, N>& out,
                 const std::string& prefix) {
    const YAML::Node n = map[key];
    if (!n) return;
    const std::string path = prefix + key;
    if (!n.IsSequence() || n.size() != N) {
      error(path, "must be a list of " + std::to_string(N) + " numbers");
      return;
    }
    try {
      std::array<T, N> tmp{};
      for (std::size_t i = 0; i < N; ++i) tmp[i] = n[i].as<T>();
      out = tmp;
    } catch (const YAML::Exception&) {
      error(path, "has the wrong type");
    }
  }

 private:
  std::vector<std::string>& errors_;
};

template <typename T>
std::function<bool(const T&)> positive() {
  return [](const T& v) { return v > T{}; };
}

template <typename T>
std::function<bool(const T&)> non_negative() {
  return [](const T& v) { return v >= T{}; };
}

void parse_earth(Reader& r, const YAML::Node& n, EarthSection& e) {
  if (!r.is_map(n, "earth")) return;
  r.allow_keys(n, {"radius_km", "mu_m3_s2"}, "earth.");
  r.get<double>(n, "radius_km", e.radius_km, "earth.", positive<double>(), "> 0");
  r.get<double>(n, "mu_m3_s2", e.mu_m3_s2, "earth.", positive<double>(), "> 0");
}

void parse_budget(Reader& r, const YAML::Node& n, BudgetSection& b) {
  if (!r.is_map(n, "budget")) return;
  const std::string p = "budget.";
  r.allow_keys(n,
               {"distance_km", "eirp_dbw", "tx_antenna_gain_dbi", "rx_antenna_gain_dbi",
                "atmospheric_rain_loss_db", "tx_losses_db", "rx_losses_db", "sensitivity_dbm"},
               p);
  r.get<double>(n, "distance_km", b.distance_km, p, positive<double>(), "> 0");
  r.get<double>(n, "eirp_dbw", b.eirp_dbw, p);
  r.get<double>(n, "tx_antenna_gain_dbi", b.tx_antenna_gain_dbi, p);
  r.get<double>(n, "rx_antenna_gain_dbi", b.rx_antenna_gain_dbi, p);
  r.get<double>(n, "atmospheric_rain_loss_db", b.atmospheric_rain_loss_db, p,
                non_negative<double>(), ">= 0");
  r.get<double>(n, "tx_losses_db", b.tx_losses_db, p, non_negative<double>(), ">= 0");
  r.get<double>(n, "rx_losses_db", b.rx_losses_db, p, non_negative<double>(), ">= 0");
  r.get<double>(n, "sensitivity_dbm", b.sensitivity_dbm, p);
}

void parse_source(Reader& r, const YAML::Node& n, SourceSection& s, const std::string& p) {
  if (!r.is_map(n, p.substr(0, p.size() - 1))) return;
  r.allow_keys(n,
               {"altitude_km", "tilt_deg", "azimuth_deg", "position_m", "phase_deg",
                "power_scale", "beamwidth_deg", "orbit_tilt_deg"},
               p);
  r.get<double>(n, "altitude_km", s.altitude_km, p, positive<double>(), "> 0");
  r.get<double>(n, "tilt_deg", s.tilt_deg, p,
                [](const double& v) { return v >= 0.0 && v < 90.0; }, "in [0, 90)");
  r.get<double>(n, "azimuth_deg", s.azimuth_deg, p);
  if (n["position_m"]) {
    std::array<double, 3> pos{};
    r.get_array(n, "position_m", pos, p);
    s.position_m = pos;
  }
  r.get<double>(n, "phase_deg", s.phase_deg, p);
  r.get<double>(n, "power_scale", s.power_scale, p, positive<double>(), "> 0");
  r.get<double>(n, "beamwidth_deg", s.beamwidth_deg, p,
                [](const double& v) { return v > 0.0 && v < 180.0; }, "in (0, 180)");
  r.get<double>(n, "orbit_tilt_deg", s.orbit_tilt_deg, p,
                [](const double& v) { return v >= 0.0 && v <= 90.0; }, "in [0, 90]");
}

void parse_grid(Reader& r, const YAML::Node& n, GridSection& g) {
  if (!r.is_map(n, "grid")) return;
  const std::string p = "grid.";
  r.allow_keys(n,
               {"center_m", "extent_m", "cells", "pfd_compensation", "scan_loss_exponent",
                "e0_v_per_m", "reference_range_km"},
               p);
  r.get_array(n, "center_m", g.center_m, p);
  r.get_array(n, "extent_m", g.extent_m, p);
  r.get_array(n, "cells", g.cells, p);
  if (!(g.extent_m[0] > 0.0 && g.extent_m[1] > 0.0)) r.error(p + "extent_m", "must be > 0");
  if (!(g.cells[0] >= 1 && g.cells[1] >= 1)) r.error(p + "cells", "must be >= 1");
  r.get<bool>(n, "pfd_compensation", g.pfd_compensation, p);
  r.get<double>(n, "scan_loss_exponent", g.scan_loss_exponent, p, non_negative<double>(), ">= 0");
  r.get<double>(n, "e0_v_per_m", g.e0_v_per_m, p, positive<double>(), "> 0");
  r.get<double>(n, "reference_range_km", g.reference_range_km, p, positive<double>(), "> 0");
}

void parse_sync(Reader& r, const YAML::Node& n, SyncSection& s) {
  if (!r.is_map(n, "sync")) return;
  const std::string p = "sync.";
  r.allow_keys(n,
               {"satellites", "trials", "phase_sigma_rad", "time_sigma_s", "freq_offset_sigma_hz",
                "observation_time_s", "sweep_phase_sigma_rad"},
               p);
  r.get<int>(n, "satellites", s.satellites, p, [](const int& v) { return v >= 1; }, ">= 1");
  r.get<std::uint64_t>(n, "trials", s.trials, p,
                       [](const std::uint64_t& v) { return v >= 1; }, ">= 1");
  r.get<double>(n, "phase_sigma_rad", s.phase_sigma_rad, p, non_negative<double>(), ">= 0");
  r.get<double>(n, "time_sigma_s", s.time_sigma_s, p, non_negative<double>(), ">= 0");
  r.get<double>(n, "freq_offset_sigma_hz", s.freq_offset_sigma_hz, p, non_negative<double>(),
                ">= 0");
  r.get<double>(n, "observation_time_s", s.observation_time_s, p, non_negative<double>(), ">= 0");
  if (const YAML::Node sw = n["sweep_phase_sigma_rad"]) {
    if (!sw.IsSequence()) {
      r.error(p + "sweep_phase_sigma_rad", "must be a list of numbers");
    } else {
      try {
        for (const auto& v : sw) {
          const double x = v.as<double>();
          if (!(x >= 0.0) || !std::isfinite(x))
            r.error(p + "sweep_phase_sigma_rad", "entries must be >= 0");
          else
            s.sweep_phase_sigma_rad.push_back(x);
        }
      } catch (const YAML::Exception&) {
        r.error(p + "sweep_phase_sigma_rad", "has the wrong type");
      }
    }
  }
}

void parse_doppler(Reader& r, const YAML::Node& n, DopplerSection& d) {
  if (!r.is_map(n, "doppler")) return;
  const std::string p = "doppler.";
  r.allow_keys(n, {"altitude_km", "max_elevation_deg", "samples"}, p);
  r.get<double>(n, "altitude_km", d.altitude_km, p, positive<double>(), "> 0");
  r.get<double>(n, "max_elevation_deg", d.max_elevation_deg, p,
                [](const double& v) { return v > 0.0 && v <= 90.0; }, "in (0, 90]");
  r.get<int>(n, "samples", d.samples, p, [](const int& v) { return v >= 2; }, ">= 2");
}

void parse_profile(Reader& r, const YAML::Node& n, ProfileSection& s) {
  if (!r.is_map(n, "profile")) return;
  const std::string p = "profile.";
  r.allow_keys(n, {"separation_wavelengths", "tilt_deg", "z_from_mm", "z_to_mm", "samples"}, p);
  r.get<double>(n, "separation_wavelengths", s.separation_wavelengths, p, positive<double>(),
                "> 0");
  r.get<double>(n, "tilt_deg", s.tilt_deg, p,
                [](const double& v) { return v > 0.0 && v < 90.0; }, "in (0, 90)");
  r.get<double>(n, "z_from_mm", s.z_from_mm, p);
  r.get<double>(n, "z_to_mm", s.z_to_mm, p);
  r.get<int>(n, "samples", s.samples, p, [](const int& v) { return v >= 2; }, ">= 2");
  if (s.z_from_mm == s.z_to_mm) r.error(p + "z_to_mm", "must differ from z_from_mm");
}

void parse_enhance(Reader& r, const YAML::Node& n, EnhanceSection& e) {
  if (!r.is_map(n, "enhance")) return;
  const std::string p = "enhance.";
  r.allow_keys(n, {"n_max", "m", "xi_deg"}, p);
  r.get<int>(n, "n_max", e.n_max, p, [](const int& v) { return v >= 1; }, ">= 1");
  r.get<int>(n, "m", e.m, p, [](const int& v) { return v >= 0; }, ">= 0");
  r.get<double>(n, "xi_deg", e.xi_deg, p);
}

template <typename Fn>
void collect(std::vector<std::string>& errors, const std::string& where, Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    errors.push_back(where + ": " + e.what());
  }
}

}  // namespace

ScenarioFile parse_scenario(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ScenarioError({std::string("malformed scenario text: ") + e.what()});
  }
  std::vector<std::string> errors;
  Reader r(errors);
  ScenarioFile s;
  if (!root.IsMap()) throw ScenarioError({"scenario must be a mapping"});

  r.allow_keys(root,
               {"schema_version", "frequency_hz", "earth", "budget", "sources", "grid", "sync",
                "doppler", "profile", "enhance"},
               "");
  if (!root["schema_version"]) {
    r.error("schema_version", "is required");
  } else {
    r.get<int>(root, "schema_version", s.schema_version, "",
               [](const int& v) { return v == kScenarioSchemaVersion; }, "a supported version (1)");
  }
  r.get<double>(root, "frequency_hz", s.frequency_hz, "", positive<double>(), "> 0");

  if (root["earth"]) parse_earth(r, root["earth"], s.earth);
  if (root["budget"]) parse_budget(r, root["budget"], s.budget.emplace());
  if (const YAML::Node src = root["sources"]) {
    if (!src.IsSequence()) {
      r.error("sources", "must be a list");
    } else {
      for (std::size_t i = 0; i < src.size(); ++i)
        parse_source(r, src[i], s.sources.emplace_back(),
                     "sources[" + std::to_string(i) + "].");
    }
  }
  if (root["grid"]) parse_grid(r, root["grid"], s.grid.emplace());
  if (root["sync"]) parse_sync(r, root["sync"], s.sync.emplace());
  if (root["doppler"]) parse_doppler(r, root["doppler"], s.doppler.emplace());
  if (root["profile"]) parse_profile(r, root["profile"], s.profile.emplace());
  if (root["enhance"]) parse_enhance(r, root["enhance"], s.enhance.emplace());

  if (errors.empty()) {
    auto more = validate_scenario(s);
    errors.insert(errors.end(), more.begin(), more.end());
  }
  if (!errors.empty()) throw ScenarioError(std::move(errors));
  return s;
}

ScenarioFile load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError({"cannot open scenario file '" + path + "'"});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const ScenarioFile& s) {
  std::ostringstream o;
  auto num = [](auto v) { return format_number(v); };
  o << "schema_version: " << s.schema_version << "\n";
  o << "frequency_hz: " << num(s.frequency_hz) << "\n";
  o << "earth:\n";
  o << "  radius_km: " << num(s.earth.radius_km) << "\n";
  o << "  mu_m3_s2: " << num(s.earth.mu_m3_s2) << "\n";
  if (s.budget) {
    const auto& b = *s.budget;
    o << "budget:\n";
    o << "  distance_km: " << num(b.distance_km) << "\n";
    o << "  eirp_dbw: " << num(b.eirp_dbw) << "\n";
    o << "  tx_antenna_gain_dbi: " << num(b.tx_antenna_gain_dbi) << "\n";
    o << "  rx_antenna_gain_dbi: " << num(b.rx_antenna_gain_dbi) << "\n";
    o << "  atmospheric_rain_loss_db: " << num(b.atmospheric_rain_loss_db) << "\n";
    o << "  tx_losses_db: " << num(b.tx_losses_db) << "\n";
    o << "  rx_losses_db: " << num(b.rx_losses_db) << "\n";
    o << "  sensitivity_dbm: " << num(b.sensitivity_dbm) << "\n";
  }
  if (!s.sources.empty()) {
    o << "sources:\n";
    for (const auto& src : s.sources) {
      o << "  - altitude_km: " << num(src.altitude_km) << "\n";
      o << "    tilt_deg: " << num(src.tilt_deg) << "\n";
      o << "    azimuth_deg: " << num(src.azimuth_deg) << "\n";
      if (src.position_m) {
        const auto& p = *src.position_m;
        o << "    position_m: [" << num(p[0]) << ", " << num(p[1]) << ", " << num(p[2]) << "]\n";
      }
      o << "    phase_deg: " << num(src.phase_deg) << "\n";
      o << "    power_scale: " << num(src.power_scale) << "\n";
      o << "    beamwidth_deg: " << num(src.beamwidth_deg) << "\n";
      o << "    orbit_tilt_deg: " << num(src.orbit_tilt_deg) << "\n";
    }
  }
  if (s.grid) {
    const auto& g = *s.grid;
    o << "grid:\n";
    o << "  center_m: [" << num(g.center_m[0]) << ", " << num(g.center_m[1]) << "]\n";
    o << "  extent_m: [" << num(g.extent_m[0]) << ", " << num(g.extent_m[1]) << "]\n";
    o << "  cells: [" << g.cells[0] << ", " << g.cells[1] << "]\n";
    o << "  pfd_compensation: " << (g.pfd_compensation ? "true" : "false") << "\n";
    o << "  scan_loss_exponent: " << num(g.scan_loss_exponent) << "\n";
    o << "  e0_v_per_m: " << num(g.e0_v_per_m) << "\n";
    o << "  reference_range_km: " << num(g.reference_range_km) << "\n";
  }
  if (s.sync) {
    const auto& y = *s.sync;
    o << "sync:\n";
    o << "  satellites: " << y.satellites << "\n";
    o << "  trials: " << y.trials << "\n";
    o << "  phase_sigma_rad: " << num(y.phase_sigma_rad) << "\n";
    o << "  time_sigma_s: " << num(y.time_sigma_s) << "\n";
    o << "  freq_offset_sigma_hz: " << num(y.freq_offset_sigma_hz) << "\n";
    o << "  observation_time_s: " << num(y.observation_time_s) << "\n";
    if (!y.sweep_phase_sigma_rad.empty()) {
      o << "  sweep_phase_sigma_rad: [";
      for (std::size_t i = 0; i < y.sweep_phase_sigma_rad.size(); ++i)
        o << (i ? ", " : "") << num(y.sweep_phase_sigma_rad[i]);
      o << "]\n";
    }
  }
  if (s.doppler) {
    o << "doppler:\n";
    o << "  altitude_km: " << num(s.doppler->altitude_km) << "\n";
    o << "  max_elevation_deg: " << num(s.doppler->max_elevation_deg) << "\n";
    o << "  samples: " << s.doppler->samples << "\n";
  }
  if (s.profile) {
    const auto& p = *s.profile;
    o << "profile:\n";
    o << "  separation_wavelengths: " << num(p.separation_wavelengths) << "\n";
    o << "  tilt_deg: " << num(p.tilt_deg) << "\n";
    o << "  z_from_mm: " << num(p.z_from_mm) << "\n";
    o << "  z_to_mm: " << num(p.z_to_mm) << "\n";
    o << "  samples: " << p.samples << "\n";
  }
  if (s.enhance) {
    o << "enhance:\n";
    o << "  n_max: " << s.enhance->n_max << "\n";
    o << "  m: " << s.enhance->m << "\n";
    o << "  xi_deg: " << num(s.enhance->xi_deg) << "\n";
  }
  return o.str();
}

std::string scenario_hash(const ScenarioFile& s) {
  const std::string text = serialize_scenario(s);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 digest failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

EarthModel earth_model(const ScenarioFile& s) {
  return {s.earth.radius_km * 1e3, s.earth.mu_m3_s2};
}

LinkBudgetParams budget_params(const ScenarioFile& s) {
  if (!s.budget) throw std::invalid_argument("scenario has no budget section");
  const auto& b = *s.budget;
  LinkBudgetParams p;
  p.distance = b.distance_km * 1e3;
  p.frequency = s.frequency_hz;
  p.eirp = b.eirp_dbw;
  p.tx_antenna_gain = b.tx_antenna_gain_dbi;
  p.rx_antenna_gain = b.rx_antenna_gain_dbi;
  p.atmospheric_rain_loss = b.atmospheric_rain_loss_db;
  p.tx_losses = b.tx_losses_db;
  p.rx_losses = b.rx_losses_db;
  p.sensitivity = b.sensitivity_dbm;
  return p;
}

GridSpec grid_spec(const ScenarioFile& s) {
  if (!s.grid) throw std::invalid_argument("scenario has no grid section");
  const auto& g = *s.grid;
  GridSpec spec{{g.center_m[0], g.center_m[1], 0.0}, g.extent_m[0], g.extent_m[1], g.cells[0],
                g.cells[1]};
  return spec;
}

CoverageOptions coverage_options(const ScenarioFile& s) {
  CoverageOptions o;
  if (s.grid) {
    o.pfd_compensation = s.grid->pfd_compensation;
    o.field.scan_loss_exponent = s.grid->scan_loss_exponent;
    o.field.e0_rms = s.grid->e0_v_per_m;
    o.field.reference_range = s.grid->reference_range_km * 1e3;
  }
  return o;
}

std::vector<SatelliteSource> satellite_sources(const ScenarioFile& s) {
  const GroundPoint target =
      s.grid ? GroundPoint{s.grid->center_m[0], s.grid->center_m[1], 0.0} : GroundPoint{};
  std::vector<SatelliteSource> out;
  out.reserve(s.sources.size());
  for (const auto& src : s.sources) {
    SatelliteState state;
    const double xi = deg_to_rad(src.orbit_tilt_deg);
    if (src.position_m) {
      const auto& p = *src.position_m;
      state.position = Vector3d(p[0], p[1], p[2]);
      state.orbit_plane_tilt_xi = xi;
      state.validate();
    } else {
      state = satellite_over(target, src.altitude_km * 1e3, deg_to_rad(src.tilt_deg),
                             deg_to_rad(src.azimuth_deg), xi);
    }
    out.push_back(SatelliteSource::steered_at(state, target, deg_to_rad(src.phase_deg),
                                              src.power_scale, deg_to_rad(src.beamwidth_deg)));
  }
  return out;
}

SyncErrorModel sync_model(const ScenarioFile& s) {
  if (!s.sync) throw std::invalid_argument("scenario has no sync section");
  const auto& y = *s.sync;
  SyncErrorModel m;
  m.phase_sigma = y.phase_sigma_rad;
  m.time_sigma = y.time_sigma_s;
  m.freq_offset_sigma = y.freq_offset_sigma_hz;
  m.carrier = s.frequency_hz;
  m.observation_time = y.observation_time_s;
  return m;
}

PassGeometry pass_geometry(const ScenarioFile& s) {
  if (!s.doppler) throw std::invalid_argument("scenario has no doppler section");
  const auto& d = *s.doppler;
  return visible_pass(d.altitude_km * 1e3, deg_to_rad(d.max_elevation_deg), s.frequency_hz,
                      d.samples, earth_model(s));
}

std::vector<std::string> validate_scenario(const ScenarioFile& s, std::string_view command) {
  std::vector<std::string> errors;
  const bool all = command.empty();
  if (s.schema_version != kScenarioSchemaVersion)
    errors.push_back("schema_version: unsupported version " + std::to_string(s.schema_version));
  if (!(s.frequency_hz > 0.0)) errors.push_back("frequency_hz: must be > 0");
  collect(errors, "earth", [&] { earth_model(s).validate(); });

  if (all ? s.budget.has_value() : command == "budget")
    collect(errors, "budget", [&] { budget_params(s).validate(); });

  if (all ? (s.grid.has_value() || !s.sources.empty()) : command == "coverage") {
    if (s.sources.empty()) errors.push_back("sources: coverage needs at least one source");
    if (!s.grid) errors.push_back("grid: section is required for coverage");
    if (s.grid) collect(errors, "grid", [&] { grid_spec(s).validate(); });
    std::vector<SatelliteSource> sources;
    collect(errors, "sources", [&] { sources = satellite_sources(s); });
    if (s.grid && sources.size() > 1) {
      collect(errors, "grid", [&] {
        const GridSpec g = grid_spec(s);
        const double period = min_fringe_period(sources, g.center, s.frequency_hz);
        if (std::max(g.cell_x(), g.cell_y()) > 0.25 * period)
          throw std::invalid_argument("cells exceed a quarter of the " + format_number(period) +
                                      " m fringe period");
      });
    }
    if (s.grid && s.grid->pfd_compensation)
      for (std::size_t i = 0; i < sources.size(); ++i)
        collect(errors, "sources[" + std::to_string(i) + "]", [&] {
          compensated_power_scale(sources[i], 0.0, s.grid->scan_loss_exponent);
        });
  }

  if (all ? s.sync.has_value() : command == "sync-mc") {
    if (!s.sync) errors.push_back("sync: section is required for sync-mc");
    else collect(errors, "sync", [&] { sync_model(s).validate(); });
  }
  if (all ? s.doppler.has_value() : command == "doppler") {
    if (!s.doppler) errors.push_back("doppler: section is required for doppler");
    else collect(errors, "doppler", [&] { pass_geometry(s).validate(); });
  }
  if (!all && command == "profile" && !s.profile)
    errors.push_back("profile: section is required for profile");
  if (s.profile && (all || command == "profile"))
    collect(errors, "profile", [&] {
      const auto& p = *s.profile;
      const double lambda = wavelength(s.frequency_hz);
      const double sep = p.separation_wavelengths * lambda;
      const double z0 = p.z_from_mm * 1e-3, z1 = p.z_to_mm * 1e-3;
      if (z0 == 0.0 || z1 == 0.0 || (z0 < 0.0) != (z1 < 0.0))
        throw std::invalid_argument("z range must not cross the source plane z = 0");
      focus_depth(sep, deg_to_rad(p.tilt_deg));
    });
  if (s.enhance && (all || command == "enhance")) {
    if (s.enhance->m > s.enhance->n_max)
      errors.push_back("enhance.m: must not exceed n_max");
  }
  return errors;
}

}  // namespace dbf

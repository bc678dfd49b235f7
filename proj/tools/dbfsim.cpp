// SPDX-License-Identifier: Apache-2.0
//
// dbfsim: command-line front end for the distributed beamforming simulator.
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dbf/coverage.hpp"
#include "dbf/doppler.hpp"
#include "dbf/em.hpp"
#include "dbf/export.hpp"
#include "dbf/geometry.hpp"
#include "dbf/link_budget.hpp"
#include "dbf/scenario.hpp"
#include "dbf/sync_mc.hpp"

namespace fs = std::filesystem;
using namespace dbf;

namespace {

struct Options {
  std::string scenario_path;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  std::string format = "csv";
  bool spherical_earth = false;
  std::optional<int> n;
  std::optional<int> m;
  std::optional<double> xi_deg;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename... Args>
void print(const char* f, Args... args) {
  std::printf(f, args...);
}

ScenarioFile load_for(const Options& o, const std::string& command) {
  if (o.scenario_path.empty()) throw UsageError("--scenario is required");
  ScenarioFile s = load_scenario(o.scenario_path);
  auto problems = validate_scenario(s, command);
  if (!problems.empty()) throw ScenarioError(std::move(problems));
  return s;
}

struct Run {
  RunManifest manifest;
  fs::path out;

  Run(const Options& o, const std::string& command, const std::string& hash) : out(o.out_dir) {
    fs::create_directories(out);
    manifest.command = command;
    manifest.scenario_hash = hash;
    manifest.seed = o.seed;
  }
  fs::path output(const std::string& name) {
    manifest.outputs.push_back(name);
    return out / name;
  }
  void finish() { write_manifest(out / "manifest.yaml", manifest); }
};

int cmd_budget(const Options& o) {
  const ScenarioFile s = load_for(o, "budget");
  const LinkBudgetParams p = budget_params(s);
  const BudgetResult r = received_power(p);
  Run run(o, "budget", scenario_hash(s));
  const double required = std::max(0.0, -r.margin_vs_sensitivity);

  std::string table;
  auto row = [&table](const char* key, const char* f, double v) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, v);
    table += std::string(key) + ": " + buf + "\n";
  };
  row("distance_km", "%.1f", p.distance / 1e3);
  row("frequency_ghz", "%.3f", p.frequency / 1e9);
  row("fspl_db", "%.1f", r.fspl);
  row("eirp_dbw", "%.1f", p.eirp);
  row("tx_antenna_gain_dbi", "%.1f", p.tx_antenna_gain);
  row("rx_antenna_gain_dbi", "%.1f", p.rx_antenna_gain);
  row("atmospheric_rain_loss_db", "%.1f", p.atmospheric_rain_loss);
  row("tx_losses_db", "%.1f", p.tx_losses);
  row("rx_losses_db", "%.1f", p.rx_losses);
  row("received_power_dbm", "%.1f", r.received_power);
  row("sensitivity_dbm", "%.1f", p.sensitivity);
  row("margin_db", "%.1f", r.margin_vs_sensitivity);
  row("required_enhancement_db", "%.1f", required);
  table += "min_coherent_satellites: " + std::to_string(min_coherent_satellites(required)) + "\n";

  std::cout << table;
  std::ofstream(run.output("budget.txt")) << table;
  run.finish();
  return 0;
}

// dB of an enhancement ratio; ratios at round-off level of n^2 are zero.
double enhancement_db(double ratio, int n) {
  return ratio > 1e-12 * n * n ? power_ratio_db(ratio) : kDbFloor;
}

int cmd_enhance(const Options& o) {
  std::optional<ScenarioFile> s;
  if (!o.scenario_path.empty()) s = load_for(o, "enhance");
  EnhanceSection e = (s && s->enhance) ? *s->enhance : EnhanceSection{};
  if (o.n) e.n_max = *o.n;
  if (o.m) e.m = *o.m;
  if (o.xi_deg) e.xi_deg = *o.xi_deg;
  if (e.n_max < 1) throw UsageError("--n must be >= 1");
  if (e.m < 0 || e.m > e.n_max) throw UsageError("--m must lie in [0, n]");
  const double xi = deg_to_rad(e.xi_deg);

  Run run(o, "enhance", s ? scenario_hash(*s) : std::string("none"));
  std::ofstream csv(run.output("enhance.csv"));
  csv << "n,coherent_ratio,coherent_db,miso_ratio,miso_db,intersecting_ratio,intersecting_db\n";
  for (int n = 1; n <= e.n_max; ++n) {
    const double coherent = max_enhancement_coplanar(n);
    const int m = std::min(e.m, n);
    const double crossing = max_enhancement_intersecting(n, m, xi);
    char buf[256];
    std::snprintf(buf, sizeof buf, "%d,%.6f,%.4f,%.6f,%.4f,%.6f,%.4f\n", n, coherent,
                  power_ratio_db(coherent), static_cast<double>(n),
                  power_ratio_db(static_cast<double>(n)), crossing,
                  enhancement_db(crossing, n));
    csv << buf;
  }
  const double ratio = max_enhancement_intersecting(e.n_max, e.m, xi);
  print("coplanar n=%d: %g (%.2f dB), miso %d (%.2f dB)\n", e.n_max,
        max_enhancement_coplanar(e.n_max), power_ratio_db(max_enhancement_coplanar(e.n_max)),
        e.n_max, power_ratio_db(e.n_max));
  print("intersecting n=%d m=%d xi_deg=%g: %g (%.2f dB)\n", e.n_max, e.m, e.xi_deg, ratio,
        enhancement_db(ratio, e.n_max));
  run.finish();
  return 0;
}

int cmd_profile(const Options& o) {
  const ScenarioFile s = load_for(o, "profile");
  const ProfileSection& p = *s.profile;
  const double lambda = wavelength(s.frequency_hz);
  const double sep = p.separation_wavelengths * lambda;
  const double tilt = deg_to_rad(p.tilt_deg);
  const auto samples = centerline_profile(sep, tilt, s.frequency_hz, p.z_from_mm * 1e-3,
                                          p.z_to_mm * 1e-3, p.samples);
  const double depth = focus_depth(sep, tilt);
  const auto at_focus = centerline_profile(sep, tilt, s.frequency_hz, -depth, -depth * 1.001, 2);

  Run run(o, "profile", scenario_hash(s));
  write_profile_csv(run.output("profile.csv"), samples);
  print("separation_mm: %.1f\nfocus_depth_mm: %.1f\nfocus_enhancement_db: %.2f\n", sep * 1e3,
        depth * 1e3, at_focus.front().coherent_db);
  run.finish();
  return 0;
}

int cmd_coverage(const Options& o) {
  if (o.format != "csv" && o.format != "pgm") throw UsageError("--format must be csv or pgm");
  const ScenarioFile s = load_for(o, "coverage");
  const auto sources = satellite_sources(s);
  const GridSpec spec = grid_spec(s);
  const CoverageGrid grid = render_coverage(sources, spec, s.frequency_hz, coverage_options(s));
  const std::string hash = scenario_hash(s);
  Run run(o, "coverage", hash);

  if (o.format == "csv") {
    write_coverage_csv(run.output("coverage.csv"), grid);
  } else {
    const GreymapRange range = default_greymap_range(grid);
    write_coverage_pgm(run.output("coverage_coherent.pgm"), grid, "coherent", range);
    write_coverage_pgm(run.output("coverage_miso.pgm"), grid, "miso", range);
    write_greymap_metadata(run.output("coverage.meta"), grid, range, hash,
                           {"coverage_coherent.pgm", "coverage_miso.pgm"});
  }

  std::string stats;
  auto line = [&stats](const char* key, const char* f, double v) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, v);
    stats += std::string(key) + ": " + buf + "\n";
  };
  stats += "sources: " + std::to_string(sources.size()) + "\n";
  line("peak_gain_db", "%.4f", relative_db(grid.coherent.maxCoeff(), grid.single_max));
  line("miso_peak_db", "%.4f", relative_db(grid.miso.maxCoeff(), grid.single_max));
  const EarthModel earth = earth_model(s);
  const auto& first = s.sources.front();
  line("footprint_radius_km", "%.3f",
       footprint_radius(first.altitude_km * 1e3, deg_to_rad(first.beamwidth_deg), earth,
                        o.spherical_earth) /
           1e3);
  if (sources.size() == 2) {
    line("satellite_separation_km", "%.4f",
         (sources[0].state.position - sources[1].state.position).norm() / 1e3);
    line("fringe_period_m", "%.3f", min_fringe_period(sources, spec.center, s.frequency_hz));
    line("fringe_width_m", "%.3f", measure_fringe_width(grid));
  } else if (sources.size() > 2) {
    const SpotMeasurement spot = measure_spot(grid);
    line("spot_diameter_m", "%.3f", spot.diameter);
    line("spot_diameter_3db_m", "%.3f", spot.diameter_3db);
    line("spot_peak_gain_db", "%.4f", power_ratio_db(spot.peak_gain));
  }
  std::cout << stats;
  std::ofstream(run.output("coverage_stats.txt")) << stats;
  run.finish();
  return 0;
}

int cmd_sync_mc(const Options& o) {
  const ScenarioFile s = load_for(o, "sync-mc");
  const SyncSection& y = *s.sync;
  const SyncErrorModel base = sync_model(s);
  std::vector<double> sigmas = y.sweep_phase_sigma_rad;
  if (sigmas.empty()) sigmas.push_back(base.phase_sigma);

  std::vector<SweepRow> rows;
  for (double sigma : sigmas) {
    SyncErrorModel m = base;
    m.phase_sigma = sigma;
    rows.push_back({sigma, run_mc(m, y.satellites, y.trials, o.seed)});
  }
  Run run(o, "sync-mc", scenario_hash(s));
  write_sync_sweep_csv(run.output("sync_mc.csv"), rows, y.satellites, o.seed);
  for (const auto& r : rows) {
    SyncErrorModel m = base;
    m.phase_sigma = r.sigma;
    print("sigma_rad=%.4f mean_gain=%.6f (%.3f dB) analytic=%.6f stderr=%.6f\n", r.sigma,
          r.result.mean_gain, power_ratio_db(r.result.mean_gain),
          analytic_expected_gain(y.satellites, m.equivalent_phase_sigma()),
          r.result.standard_error);
  }
  run.finish();
  return 0;
}

int cmd_doppler(const Options& o) {
  const ScenarioFile s = load_for(o, "doppler");
  const EarthModel earth = earth_model(s);
  const PassGeometry pass = pass_geometry(s);
  const auto samples = doppler_profile(pass, earth);
  Run run(o, "doppler", scenario_hash(s));
  write_doppler_csv(run.output("doppler.csv"), samples);
  double max_shift = 0.0;
  for (const auto& x : samples) max_shift = std::max(max_shift, std::abs(x.doppler));
  const double v = orbital_speed(pass.altitude, earth);
  print("orbital_speed_mps: %.1f\nmax_doppler_hz: %.1f\nbound_hz: %.1f\n", v, max_shift,
        pass.carrier * v / FreeSpaceConstants::light_speed);
  run.finish();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed beamforming simulator for LEO satellite-to-phone links"};
  app.set_version_flag("--version", kToolVersion);
  Options o;
  app.add_option("--scenario", o.scenario_path, "Scenario YAML file");
  app.add_option("--out", o.out_dir, "Output directory");
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--format", o.format, "Raster format: csv or pgm");
  app.add_flag("--spherical-earth", o.spherical_earth, "Spherical footprint model");
  app.require_subcommand(1);

  auto* budget = app.add_subcommand("budget", "Single-satellite link budget");
  auto* enhance = app.add_subcommand("enhance", "Coherent enhancement bounds");
  enhance->add_option("--n", o.n, "Number of coherent satellites");
  enhance->add_option("--m", o.m, "Satellites on the crossing orbit");
  enhance->add_option("--xi", o.xi_deg, "Orbit crossing angle (deg)");
  auto* profile = app.add_subcommand("profile", "Two-source centreline profile");
  auto* coverage = app.add_subcommand("coverage", "Ground coverage raster");
  auto* sync = app.add_subcommand("sync-mc", "Monte Carlo synchronisation sweep");
  auto* doppler = app.add_subcommand("doppler", "Doppler profile of a pass");
  for (auto* sub : {budget, enhance, profile, coverage, sync, doppler}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  std::string command = app.get_subcommands().front()->get_name();
  try {
    if (command == "budget") return cmd_budget(o);
    if (command == "enhance") return cmd_enhance(o);
    if (command == "profile") return cmd_profile(o);
    if (command == "coverage") return cmd_coverage(o);
    if (command == "sync-mc") return cmd_sync_mc(o);
    if (command == "doppler") return cmd_doppler(o);
  } catch (const ScenarioError& e) {
    std::string joined;
    for (const auto& x : e.errors()) joined += (joined.empty() ? "" : "; ") + x;
    std::cerr << "error: command=" << command << " kind=scenario message=" << joined << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: command=" << command << " kind=usage message=" << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: command=" << command << " kind=runtime message=" << e.what() << "\n";
    return 1;
  }
  return 2;
}

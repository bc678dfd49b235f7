// SPDX-License-Identifier: Apache-2.0
#include "dbf/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "dbf/link_budget.hpp"

namespace dbf {

void GridSpec::validate() const {
  if (!(extent_x > 0.0) || !(extent_y > 0.0) || nx < 1 || ny < 1)
    throw std::invalid_argument("grid must have positive extent and at least one cell per axis");
  if (!std::isfinite(center.x) || !std::isfinite(center.y) || !std::isfinite(center.z))
    throw std::invalid_argument("grid centre must be finite");
}

double pfd_compensation(double steer_off_nadir, double altitude, double slant,
                        double scan_loss_exponent) {
  if (!(altitude > 0.0)) throw std::invalid_argument("altitude must be > 0");
  if (!(slant >= altitude * (1.0 - 1e-12)))
    throw std::invalid_argument("slant range must be >= altitude");
  if (!(steer_off_nadir >= 0.0 && steer_off_nadir < kPi / 2))
    throw std::invalid_argument("steer_off_nadir must lie in [0, pi/2)");
  const double spread = slant / altitude;
  return spread * spread / std::pow(std::cos(steer_off_nadir), scan_loss_exponent);
}

double compensated_power_scale(const SatelliteSource& source, double ground_z,
                               double scan_loss_exponent) {
  const double altitude = source.state.position.z() - ground_z;
  const double down = -source.steer_direction.z();
  if (!(down > 0.0)) throw std::invalid_argument("beam does not intersect the ground plane");
  const double slant = altitude / down;
  return source.tx_power_scale *
         pfd_compensation(source.steer_off_nadir(), altitude, slant, scan_loss_exponent);
}

double min_fringe_period(std::span<const SatelliteSource> sources, const GroundPoint& at,
                         double frequency) {
  const double lambda = wavelength(frequency);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const Vector3d ki = (at.vec() - sources[i].state.position).normalized();
    for (std::size_t j = i + 1; j < sources.size(); ++j) {
      const Vector3d kj = (at.vec() - sources[j].state.position).normalized();
      const double dk = (ki - kj).head<2>().norm();
      if (dk > 0.0) best = std::min(best, lambda / dk);
    }
  }
  return best;
}

CoverageGrid render_coverage(std::span<const SatelliteSource> sources, const GridSpec& grid,
                             double frequency, const CoverageOptions& options) {
  if (sources.empty()) throw std::invalid_argument("coverage needs at least one source");
  grid.validate();
  if (!(frequency > 0.0)) throw std::invalid_argument("frequency must be > 0");
  for (const auto& s : sources) s.validate();

  if (options.aliasing_guard && sources.size() > 1) {
    const double period = min_fringe_period(sources, grid.center, frequency);
    const double cell = std::max(grid.cell_x(), grid.cell_y());
    if (cell > 0.25 * period) {
      std::ostringstream msg;
      msg << "grid too coarse: cell " << cell << " m exceeds a quarter of the " << period
          << " m fringe period";
      throw std::invalid_argument(msg.str());
    }
  }

  // Apply the power scale once per source; the renderer works on copies.
  std::vector<SatelliteSource> scaled(sources.begin(), sources.end());
  if (options.pfd_compensation)
    for (auto& s : scaled)
      s.tx_power_scale =
          compensated_power_scale(s, grid.center.z, options.field.scan_loss_exponent);

  CoverageGrid out;
  out.spec = grid;
  out.sources = static_cast<int>(sources.size());
  out.coherent.resize(grid.ny, grid.nx);
  out.miso.resize(grid.ny, grid.nx);

  for (const auto& s : scaled) {
    const double down = -s.steer_direction.z();
    const double t = (s.state.position.z() - grid.center.z) / down;
    const Vector3d hit = s.state.position + t * s.steer_direction;
    GroundPoint boresight{hit.x(), hit.y(), grid.center.z};
    const FieldPhasor f = field_at_point(s, boresight, frequency, options.field);
    out.single_max = std::max(
        out.single_max, time_average_poynting<double>(f.e_complex, f.h_complex()).norm());
  }

  CoherentSet set;
  set.phasors.resize(scaled.size());
  // Cells are independent; rows could be evaluated in any order.
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const GroundPoint p{grid.x_at(i), grid.y_at(j), grid.center.z};
      for (std::size_t s = 0; s < scaled.size(); ++s)
        set.phasors[s] = field_at_point(scaled[s], p, frequency, options.field);
      const PoyntingResult r = coherent_poynting(set);
      out.coherent(j, i) = r.power_density;
      double sum = 0.0;
      for (double d : r.per_source_densities) sum += d;
      out.miso(j, i) = sum;
    }
  }
  return out;
}

FringeGeometry fringe_period(double lambda, double half_angle) {
  if (!(lambda > 0.0)) throw std::invalid_argument("wavelength must be > 0");
  if (!(half_angle > 0.0 && half_angle <= kPi / 2))
    throw std::invalid_argument("half_angle must lie in (0, pi/2]");
  const double period = lambda / (2.0 * std::sin(half_angle));
  return {period, 0.5 * period};
}

namespace {

struct Cut {
  std::vector<double> coord;
  std::vector<double> coherent;
  std::vector<double> miso;
};

Cut row_cut(const CoverageGrid& g, int j) {
  Cut c;
  for (int i = 0; i < g.spec.nx; ++i) {
    c.coord.push_back(g.spec.x_at(i));
    c.coherent.push_back(g.coherent(j, i));
    c.miso.push_back(g.miso(j, i));
  }
  return c;
}

Cut column_cut(const CoverageGrid& g, int i) {
  Cut c;
  for (int j = 0; j < g.spec.ny; ++j) {
    c.coord.push_back(g.spec.y_at(j));
    c.coherent.push_back(g.coherent(j, i));
    c.miso.push_back(g.miso(j, i));
  }
  return c;
}

// Cuts whose coherent level varies by less than this fraction of its
// maximum are treated as crossing no fringes.
constexpr double kFlatCut = 0.1;

bool is_flat(const Cut& c) {
  const auto [lo, hi] = std::minmax_element(c.coherent.begin(), c.coherent.end());
  return !(*hi > 0.0) || (*hi - *lo) < kFlatCut * *hi;
}

// Crest positions refined by a parabola through each local maximum and its
// neighbours. Crests below the cut's mean are ignored.
std::vector<double> crest_positions(const Cut& c) {
  const auto& v = c.coherent;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  std::vector<double> out;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] > v[i - 1] && v[i] >= v[i + 1] && v[i] > mean) {
      const double denom = v[i - 1] - 2.0 * v[i] + v[i + 1];
      const double offset = denom != 0.0 ? 0.5 * (v[i - 1] - v[i + 1]) / denom : 0.0;
      const double step = c.coord[i + 1] - c.coord[i];
      out.push_back(c.coord[i] + offset * step);
    }
  }
  return out;
}

// Width of the region around index `peak` where `level(k) >= 0`, using linear
// interpolation between samples at both edges. Empty if the region reaches
// the cut's end.
template <typename Level>
std::optional<double> width_around(const Cut& c, std::size_t peak, Level level) {
  const std::size_t n = c.coord.size();
  std::size_t lo = peak;
  while (lo > 0 && level(lo - 1) >= 0.0) --lo;
  std::size_t hi = peak;
  while (hi + 1 < n && level(hi + 1) >= 0.0) ++hi;
  if (lo == 0 || hi + 1 == n) return std::nullopt;
  auto cross = [&](std::size_t inside, std::size_t outside) {
    const double a = level(inside);
    const double b = level(outside);
    const double t = a / (a - b);
    return c.coord[inside] + t * (c.coord[outside] - c.coord[inside]);
  };
  return cross(hi, hi + 1) - cross(lo, lo - 1);
}

}  // namespace

double measure_fringe_width(const CoverageGrid& grid) {
  const Cut across_x = row_cut(grid, grid.spec.ny / 2);
  const Cut across_y = column_cut(grid, grid.spec.nx / 2);
  const std::vector<double> cx = is_flat(across_x) ? std::vector<double>{} : crest_positions(across_x);
  const std::vector<double> cy = is_flat(across_y) ? std::vector<double>{} : crest_positions(across_y);
  const bool along_x = cx.size() >= cy.size();
  const std::vector<double>& crests = along_x ? cx : cy;
  if (crests.size() < 3) {
    std::ostringstream msg;
    msg << "fringe measurement needs at least 3 resolvable crests, found " << crests.size()
        << "; enlarge or refine the grid";
    throw std::runtime_error(msg.str());
  }
  const double spacing =
      (crests.back() - crests.front()) / static_cast<double>(crests.size() - 1);

  // Follow the crest nearest the centre through the parallel cuts. Straight
  // fringes shift by a constant amount per cut; the slope t of that shift
  // gives the period as spacing / sqrt(1 + t^2).
  const int n_cuts = along_x ? grid.spec.ny : grid.spec.nx;
  const int mid = n_cuts / 2;
  auto cut_at = [&](int k) { return along_x ? row_cut(grid, k) : column_cut(grid, k); };
  auto offset_at = [&](int k) { return along_x ? grid.spec.y_at(k) : grid.spec.x_at(k); };
  const double centre = along_x ? grid.spec.center.x : grid.spec.center.y;
  double start = crests.front();
  for (double c : crests)
    if (std::abs(c - centre) < std::abs(start - centre)) start = c;

  std::vector<double> us{offset_at(mid)};
  std::vector<double> vs{start};
  for (int dir : {-1, 1}) {
    double prev = start;
    for (int k = mid + dir; k >= 0 && k < n_cuts; k += dir) {
      const std::vector<double> here = crest_positions(cut_at(k));
      if (here.empty()) break;
      double next = here.front();
      for (double c : here)
        if (std::abs(c - prev) < std::abs(next - prev)) next = c;
      if (std::abs(next - prev) > 0.25 * spacing) break;
      us.push_back(offset_at(k));
      vs.push_back(next);
      prev = next;
    }
  }
  double slope = 0.0;
  if (us.size() >= 2) {
    const Eigen::Map<const Eigen::VectorXd> u(us.data(), static_cast<Eigen::Index>(us.size()));
    const Eigen::Map<const Eigen::VectorXd> v(vs.data(), static_cast<Eigen::Index>(vs.size()));
    const Eigen::VectorXd du = u.array() - u.mean();
    const Eigen::VectorXd dv = v.array() - v.mean();
    if (du.squaredNorm() > 0.0) slope = du.dot(dv) / du.squaredNorm();
  }
  return 0.5 * spacing / std::sqrt(1.0 + slope * slope);
}

SpotMeasurement measure_spot(const CoverageGrid& grid) {
  const auto& m = grid.coherent;
  int j = grid.spec.ny / 2;
  int i = grid.spec.nx / 2;
  // Hill-climb from the centre cell to the nearest local maximum.
  for (;;) {
    int bj = j, bi = i;
    for (int dj = -1; dj <= 1; ++dj)
      for (int di = -1; di <= 1; ++di) {
        const int nj = j + dj, ni = i + di;
        if (nj < 0 || ni < 0 || nj >= grid.spec.ny || ni >= grid.spec.nx) continue;
        if (m(nj, ni) > m(bj, bi)) bj = nj, bi = ni;
      }
    if (bj == j && bi == i) break;
    j = bj;
    i = bi;
  }
  if (j == 0 || i == 0 || j == grid.spec.ny - 1 || i == grid.spec.nx - 1)
    throw std::runtime_error("central spot peak lies on the grid boundary");

  const Cut cx = row_cut(grid, j);
  const Cut cy = column_cut(grid, i);
  const double peak = m(j, i);

  auto over_miso = [](const Cut& c) {
    return [&c](std::size_t k) { return c.coherent[k] - c.miso[k]; };
  };
  auto over_half = [peak](const Cut& c) {
    return [&c, peak](std::size_t k) { return c.coherent[k] - 0.5 * peak; };
  };

  const auto wx = width_around(cx, static_cast<std::size_t>(i), over_miso(cx));
  const auto wy = width_around(cy, static_cast<std::size_t>(j), over_miso(cy));
  const auto hx = width_around(cx, static_cast<std::size_t>(i), over_half(cx));
  const auto hy = width_around(cy, static_cast<std::size_t>(j), over_half(cy));
  if (!wx || !wy || !hx || !hy)
    throw std::runtime_error("central spot is not fully contained in the grid");

  SpotMeasurement s;
  s.diameter_x = *wx;
  s.diameter_y = *wy;
  s.diameter = 0.5 * (*wx + *wy);
  s.diameter_3db = 0.5 * (*hx + *hy);
  s.peak_x = grid.spec.x_at(i);
  s.peak_y = grid.spec.y_at(j);
  s.peak_gain = grid.single_max > 0.0 ? peak / grid.single_max : 0.0;
  return s;
}

std::vector<GroundPoint> find_spots(const CoverageGrid& grid, double fraction) {
  const auto& m = grid.coherent;
  const double threshold = fraction * m.maxCoeff();
  std::vector<GroundPoint> out;
  for (int j = 1; j + 1 < grid.spec.ny; ++j)
    for (int i = 1; i + 1 < grid.spec.nx; ++i) {
      const double v = m(j, i);
      if (v < threshold) continue;
      bool is_max = true;
      for (int dj = -1; dj <= 1 && is_max; ++dj)
        for (int di = -1; di <= 1; ++di) {
          if (dj == 0 && di == 0) continue;
          // Strict on one side so flat-topped maxima are reported once.
          const double n = m(j + dj, i + di);
          if (n > v || (n == v && (dj < 0 || (dj == 0 && di < 0)))) {
            is_max = false;
            break;
          }
        }
      if (is_max) out.push_back({grid.spec.x_at(i), grid.spec.y_at(j), grid.spec.center.z});
    }
  return out;
}

}  // namespace dbf

// SPDX-License-Identifier: Apache-2.0
#include "dbf/em.hpp"

#include <algorithm>
#include <stdexcept>

namespace dbf {

namespace {

constexpr double kC = FreeSpaceConstants::light_speed;

// Propagation phase 2 pi R / lambda reduced modulo one wavelength first, so
// that half-megametre ranges keep sub-microradian phase resolution.
double propagation_phase(double range, double wavelength) {
  return 2.0 * kPi * std::fmod(range, wavelength) / wavelength;
}

}  // namespace

void SatelliteSource::validate() const {
  state.validate();
  if (!steer_direction.allFinite() || std::abs(steer_direction.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("steer_direction must be a unit vector");
  if (!(tx_power_scale > 0.0)) throw std::invalid_argument("tx_power_scale must be > 0");
  if (!std::isfinite(initial_phase)) throw std::invalid_argument("initial_phase must be finite");
  if (!(beamwidth > 0.0 && beamwidth < kPi))
    throw std::invalid_argument("beamwidth must lie in (0, pi)");
}

SatelliteSource SatelliteSource::steered_at(const SatelliteState& state, const GroundPoint& target,
                                            double initial_phase, double tx_power_scale,
                                            double beamwidth) {
  SatelliteSource s;
  s.state = state;
  s.steer_direction = (target.vec() - state.position).normalized();
  s.initial_phase = initial_phase;
  s.tx_power_scale = tx_power_scale;
  s.beamwidth = beamwidth;
  s.validate();
  return s;
}

double SatelliteSource::steer_off_nadir() const {
  return std::acos(std::clamp(-steer_direction.z(), -1.0, 1.0));
}

void FieldPhasor::validate() const {
  if (!(frequency > 0.0)) throw std::invalid_argument("phasor frequency must be > 0");
  if (std::abs(wave_unit.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("wave_unit must have unit length");
  const double e_norm = e_complex.norm();
  const std::complex<double> along = wave_unit.cast<std::complex<double>>().dot(e_complex);
  if (std::abs(along) > 1e-9 * std::max(e_norm, 1e-300))
    throw std::invalid_argument("field must be transverse to wave_unit");
}

void CoherentSet::validate() const {
  if (phasors.empty()) throw std::invalid_argument("coherent set is empty");
  const double f = phasors.front().frequency;
  for (const auto& p : phasors)
    if (p.frequency != f)
      throw std::invalid_argument("coherent superposition requires one common frequency");
}

FieldPhasor plane_wave_at(const Vector3d& origin, const Vector3d& point,
                          const Vector3d& h_reference, double peak_amplitude,
                          double phase_at_origin, double frequency) {
  if (!(frequency > 0.0)) throw std::invalid_argument("frequency must be > 0");
  const Vector3d d = point - origin;
  const double range = d.norm();
  if (!(range > 0.0)) throw std::invalid_argument("field point coincides with its source");
  const Vector3d k = d / range;
  const Vector3d e_dir_raw = h_reference.cross(k);
  const double e_len = e_dir_raw.norm();
  if (e_len < 1e-12)
    throw std::invalid_argument("wave propagates along the polarisation reference");

  const double lambda = kC / frequency;
  const double phase = phase_at_origin - propagation_phase(range, lambda);
  FieldPhasor out;
  out.frequency = frequency;
  out.wave_unit = k;
  out.e_complex = (peak_amplitude * std::polar(1.0, phase)) *
                  (e_dir_raw / e_len).cast<std::complex<double>>();
  return out;
}

double beam_taper(double off_boresight, double beamwidth) {
  const double u = off_boresight / (0.5 * beamwidth);
  return std::pow(10.0, -0.15 * u * u);
}

FieldPhasor field_at_point(const SatelliteSource& source, const GroundPoint& p, double frequency,
                           const FieldReference& ref) {
  if (!(frequency > 0.0)) throw std::invalid_argument("frequency must be > 0");
  if (source.state.position.z() - p.z < kMinAltitude)
    throw std::invalid_argument("source must be above the field point");

  const Vector3d d = p.vec() - source.state.position;
  const double range = d.norm();
  const double off_boresight =
      std::acos(std::clamp(source.steer_direction.dot(d / range), -1.0, 1.0));
  const double scan_gain =
      std::pow(std::cos(source.steer_off_nadir()), 0.5 * ref.scan_loss_exponent);
  const double amplitude = std::sqrt(2.0) * ref.e0_rms * std::sqrt(source.tx_power_scale) *
                           (ref.reference_range / range) *
                           beam_taper(off_boresight, source.beamwidth) * scan_gain;
  return plane_wave_at(source.state.position, p.vec(),
                       h_reference_for_trace(source.state.orbit_plane_tilt_xi), amplitude,
                       source.initial_phase, frequency);
}

std::pair<ComplexVector3d, ComplexVector3d> superpose(const CoherentSet& set) {
  set.validate();
  std::vector<ComplexVector3d> e, h;
  e.reserve(set.phasors.size());
  h.reserve(set.phasors.size());
  for (const auto& p : set.phasors) {
    e.push_back(p.e_complex);
    h.push_back(p.h_complex());
  }
  return superpose_fields<double>(e, h);
}

PoyntingResult average_poynting(const ComplexVector3d& e_total, const ComplexVector3d& h_total) {
  PoyntingResult r;
  r.s_vector = time_average_poynting<double>(e_total, h_total);
  r.power_density = r.s_vector.norm();
  return r;
}

PoyntingResult coherent_poynting(const CoherentSet& set) {
  const auto [e, h] = superpose(set);
  PoyntingResult r = average_poynting(e, h);
  r.per_source_densities.reserve(set.phasors.size());
  for (const auto& p : set.phasors)
    r.per_source_densities.push_back(
        time_average_poynting<double>(p.e_complex, p.h_complex()).norm());
  return r;
}

PoyntingResult poynting_two_sat_closed_form(double beta1, double beta2, double delta_phi) {
  const double coherence = 1.0 + std::cos(delta_phi);
  PoyntingResult r;
  r.s_vector = {0.0, -(std::sin(beta1) - std::sin(beta2)) * coherence,
                -(std::cos(beta1) + std::cos(beta2)) * coherence};
  r.power_density = r.s_vector.norm();
  r.per_source_densities = {1.0, 1.0};
  return r;
}

double max_enhancement_coplanar(int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  return static_cast<double>(n) * n;
}

double max_enhancement_intersecting(int n, int m, double xi) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (m < 0 || m > n) throw std::invalid_argument("m must lie in [0, n]");
  const double nn = n;
  return nn * nn - static_cast<double>(m) * nn * (1.0 - std::cos(xi));
}

double miso_power(const CoherentSet& set) {
  set.validate();
  double total = 0.0;
  for (const auto& p : set.phasors)
    total += time_average_poynting<double>(p.e_complex, p.h_complex()).norm();
  return total;
}

std::vector<ProfileSample> centerline_profile(double separation, double tilt, double frequency,
                                              double z_from, double z_to, int samples) {
  if (samples < 2) throw std::invalid_argument("samples must be >= 2");
  if (!(z_from != z_to)) throw std::invalid_argument("z range must be non-empty");
  if (!(separation > 0.0)) throw std::invalid_argument("separation must be > 0");
  if (!(tilt > 0.0 && tilt < kPi / 2)) throw std::invalid_argument("tilt must lie in (0, pi/2)");
  if (!(frequency > 0.0)) throw std::invalid_argument("frequency must be > 0");

  // Source 1 on +x tilts its beam towards -x, source 2 mirrors it. Both
  // share the y axis as H reference so their fields add on the axis.
  const Vector3d h_ref = Vector3d::UnitY();
  const Vector3d pos1(0.5 * separation, 0.0, 0.0);
  const Vector3d pos2(-0.5 * separation, 0.0, 0.0);
  const Vector3d beam1(-std::sin(tilt), 0.0, -std::cos(tilt));
  const Vector3d beam2(std::sin(tilt), 0.0, -std::cos(tilt));
  const Vector3d axis1 = h_ref.cross(beam1);
  const Vector3d axis2 = h_ref.cross(beam2);

  auto dipole = [&](const Vector3d& pos, const Vector3d& axis, const Vector3d& point) {
    const Vector3d d = point - pos;
    const double range = d.norm();
    if (range < 1e-9 * separation)
      throw std::invalid_argument("profile sample coincides with a source");
    const Vector3d k = d / range;
    const Vector3d e_dir = h_ref.cross(k).normalized();
    return plane_wave_at(pos, point, h_ref, axis.dot(e_dir) / range, 0.0, frequency);
  };

  std::vector<ProfileSample> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double z = z_from + (z_to - z_from) * i / (samples - 1);
    const Vector3d point(0.0, 0.0, z);
    CoherentSet set{{dipole(pos1, axis1, point), dipole(pos2, axis2, point)}};
    const PoyntingResult coherent = coherent_poynting(set);
    const double single = coherent.per_source_densities.front();
    if (!(single > 0.0)) throw std::invalid_argument("profile sample lies in a radiation null");
    out.push_back({z, 0.0, power_ratio_db(miso_power(set) / single),
                   power_ratio_db(coherent.power_density / single)});
  }
  return out;
}

}  // namespace dbf

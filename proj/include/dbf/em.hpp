// SPDX-License-Identifier: Apache-2.0
//
// Phasor model of the fields radiated towards the receiver and their
// coherent superposition.
//
// Fields are complex peak-amplitude phasors of a single carrier, so the time
// average of the Poynting vector reduces to S = 1/2 Re(E x conj(H)). A source
// at the reference range delivers a field whose effective (RMS) value is E0,
// so a lone wave carries E0^2 / Z0.
#pragma once

#include <span>
#include <utility>
#include <vector>

#include "dbf/source.hpp"

namespace dbf {

struct FieldPhasor {
  ComplexVector3d e_complex = ComplexVector3d::Zero();  // V/m, peak
  Vector3d wave_unit = -Vector3d::UnitZ();
  double frequency = 0.0;                               // Hz

  /// H = (1/Z0) k x E for a transverse plane wave.
  ComplexVector3d h_complex() const {
    return cross(wave_unit.cast<std::complex<double>>(), e_complex) /
           FreeSpaceConstants::impedance_z0;
  }
  void validate() const;
};

struct PoyntingResult {
  Vector3d s_vector = Vector3d::Zero();     // W/m^2
  double power_density = 0.0;               // |s_vector|
  std::vector<double> per_source_densities;
};

struct CoherentSet {
  std::vector<FieldPhasor> phasors;
  double reference_phase = 0.0;

  void validate() const;
};

/// Amplitude normalisation of the radiated fields.
struct FieldReference {
  double e0_rms = 1.0;               // V/m effective at reference_range
  double reference_range = 550e3;    // m
  double scan_loss_exponent = 1.0;   // gain ~ cos^q(steer off nadir)
};

/// Field of a wave arriving at `point` from `origin`. The electric field lies
/// along h_reference x k, so every wave sharing one `h_reference` has its H
/// field parallel to it when the source lies in the plane normal to it.
FieldPhasor plane_wave_at(const Vector3d& origin, const Vector3d& point,
                          const Vector3d& h_reference, double peak_amplitude,
                          double phase_at_origin, double frequency);

/// Horizontal unit vector normal to an orbit trace tilted by `xi` from x.
inline Vector3d h_reference_for_trace(double xi) {
  return {-std::sin(xi), std::cos(xi), 0.0};
}

/// Amplitude factor of the Gaussian beam taper: 1 on boresight and
/// 10^(-3/20) at half the full beamwidth.
double beam_taper(double off_boresight, double beamwidth);

FieldPhasor field_at_point(const SatelliteSource& source, const GroundPoint& p, double frequency,
                           const FieldReference& ref = {});

template <typename Scalar>
std::pair<ComplexVector3<Scalar>, ComplexVector3<Scalar>> superpose_fields(
    std::span<const ComplexVector3<Scalar>> e, std::span<const ComplexVector3<Scalar>> h) {
  ComplexVector3<Scalar> e_total = ComplexVector3<Scalar>::Zero();
  ComplexVector3<Scalar> h_total = ComplexVector3<Scalar>::Zero();
  for (const auto& v : e) e_total += v;
  for (const auto& v : h) h_total += v;
  return {e_total, h_total};
}

/// Componentwise sums of all E phasors and their H phasors. Rejects sets
/// that mix carrier frequencies.
std::pair<ComplexVector3d, ComplexVector3d> superpose(const CoherentSet& set);

/// Time-averaged Poynting vector 1/2 Re(E x conj(H)).
template <typename Scalar>
Vector3<Scalar> time_average_poynting(const ComplexVector3<Scalar>& e,
                                      const ComplexVector3<Scalar>& h) {
  return Scalar(0.5) * cross(e, h.conjugate()).real();
}

PoyntingResult average_poynting(const ComplexVector3d& e_total, const ComplexVector3d& h_total);

/// Superpose and average in one step, recording each source's own density.
PoyntingResult coherent_poynting(const CoherentSet& set);

/// Two in-plane sources of equal effective field E0, in units of E0^2/Z0.
/// y is the baseline axis; source 1 lies on the +y side at zenith angle
/// beta1, source 2 on the -y side at beta2.
PoyntingResult poynting_two_sat_closed_form(double beta1, double beta2, double delta_phi);

/// n^2: coherent peak over single-source density for n coplanar sources.
double max_enhancement_coplanar(int n);

/// n^2 - m n (1 - cos xi): m of n sources on an orbit crossing the reference
/// one at angle xi. At m == n this gives n^2 cos(xi) although relabelling the
/// crossing orbit as the reference would give n^2; the bound is evaluated as
/// written.
double max_enhancement_intersecting(int n, int m, double xi);

/// Incoherent (MISO) combination: sum of each source's own density.
double miso_power(const CoherentSet& set);

inline double power_ratio_db(double ratio) { return 10.0 * std::log10(ratio); }

struct ProfileSample {
  double z = 0.0;              // m
  double single_db = 0.0;
  double miso_db = 0.0;
  double coherent_db = 0.0;
};

/// Received power along the symmetry axis of two sources placed `separation`
/// apart on the x axis at z = 0, each a short dipole whose main beam is
/// tilted `tilt` from the vertical towards the axis. Powers are normalised
/// to the single source at each depth.
std::vector<ProfileSample> centerline_profile(double separation, double tilt, double frequency,
                                              double z_from, double z_to, int samples);

}  // namespace dbf

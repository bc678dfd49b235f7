// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace dbf {

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

template <typename Scalar>
using ComplexVector3 = Eigen::Matrix<std::complex<Scalar>, 3, 1>;

using Vector3d = Vector3<double>;
using ComplexVector3d = ComplexVector3<double>;

inline constexpr double kPi = std::numbers::pi;

/// Bilinear cross product. Eigen's MatrixBase::cross conjugates the result
/// for complex scalars, which is not what field algebra needs.
template <typename A, typename B>
auto cross(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  using S = typename Eigen::ScalarBinaryOpTraits<typename A::Scalar, typename B::Scalar>::ReturnType;
  return Eigen::Matrix<S, 3, 1>(a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2),
                                a(0) * b(1) - a(1) * b(0));
}

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Physical constants of vacuum.
struct FreeSpaceConstants {
  static constexpr double light_speed = 299'792'458.0;     // m/s
  static constexpr double impedance_z0 = 376.730313668;    // ohm, mu0 * c
};

/// Point in the receiver's local tangent frame (x east, y north, z up).
struct GroundPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vector3d vec() const { return {x, y, z}; }
  static GroundPoint from(const Vector3d& v) { return {v.x(), v.y(), v.z()}; }
  bool operator==(const GroundPoint&) const = default;
};

}  // namespace dbf

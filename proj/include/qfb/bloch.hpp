#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

#include "qfb/errors.hpp"

namespace qfb {

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

template <typename Scalar>
using Mat2c = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

// Slack on |a| <= 1 and on unit-axis checks.
inline constexpr double kBlochSlack = 1e-12;

/// Single-qubit state of knowledge rho = (I + a.sigma)/2 stored by its Bloch
/// vector a. The density matrix is only materialized for cross-checks.
template <typename Scalar = double>
class BlochState {
 public:
  using Vector = Vec3<Scalar>;

  BlochState() : a_(Vector::Zero()) {}
  BlochState(Scalar ax, Scalar ay, Scalar az) : a_(ax, ay, az) { check(); }
  explicit BlochState(const Vector& a) : a_(a) { check(); }

  static BlochState mixed() { return BlochState(); }

  // Builds the state with the given linear entropy at polar angle theta and
  // azimuth phi.
  static BlochState from_spherical(Scalar entropy, Scalar theta, Scalar phi = 0) {
    using std::cos;
    using std::sin;
    using std::sqrt;
    const Scalar r = sqrt(std::max(Scalar(0), 1 - 2 * entropy));
    return BlochState(r * sin(theta) * cos(phi), r * sin(theta) * sin(phi), r * cos(theta));
  }

  const Vector& vector() const { return a_; }
  Scalar x() const { return a_.x(); }
  Scalar y() const { return a_.y(); }
  Scalar z() const { return a_.z(); }
  Scalar norm() const { return a_.norm(); }
  Scalar squared_norm() const { return a_.squaredNorm(); }

  Mat2c<Scalar> density_matrix() const {
    using C = std::complex<Scalar>;
    Mat2c<Scalar> rho;
    rho << C(1 + a_.z(), 0), C(a_.x(), -a_.y()),
           C(a_.x(), a_.y()), C(1 - a_.z(), 0);
    return rho / Scalar(2);
  }

  // Reads a Bloch vector back from a (not necessarily normalized) Hermitian
  // 2x2 matrix; the trace is divided out.
  static BlochState from_density_matrix(const Mat2c<Scalar>& rho) {
    const Scalar tr = (rho(0, 0) + rho(1, 1)).real();
    return BlochState(2 * rho(1, 0).real() / tr, 2 * rho(1, 0).imag() / tr,
                      (rho(0, 0) - rho(1, 1)).real() / tr);
  }

  bool operator==(const BlochState&) const = default;

 private:
  void check() const {
    if (!(a_.squaredNorm() <= 1 + Scalar(kBlochSlack)))
      throw std::invalid_argument("Bloch vector outside the unit ball");
  }

  Vector a_;
};

/// Rotation of the Bloch vector about a unit axis, the action of
/// U = exp[-i (angle/2) axis.sigma] under conjugation.
template <typename Scalar = double>
struct Rotation {
  Vec3<Scalar> axis = Vec3<Scalar>::UnitZ();
  Scalar angle = 0;

  Rotation inverse() const { return {axis, -angle}; }

  bool has_unit_axis() const {
    using std::abs;
    return abs(axis.norm() - 1) <= Scalar(kBlochSlack);
  }

  Mat2c<Scalar> unitary() const {
    using C = std::complex<Scalar>;
    using std::cos;
    using std::sin;
    const Scalar c = cos(angle / 2);
    const Scalar s = sin(angle / 2);
    Mat2c<Scalar> u;
    u << C(c, -s * axis.z()), C(-s * axis.y(), -s * axis.x()),
         C(s * axis.y(), -s * axis.x()), C(c, s * axis.z());
    return u;
  }
};

template <typename Scalar>
Scalar linear_entropy(const BlochState<Scalar>& s) {
  return (1 - s.squared_norm()) / 2;
}

// Rodrigues form of the SU(2) conjugation.
template <typename Scalar>
BlochState<Scalar> rotate(const BlochState<Scalar>& s, const Rotation<Scalar>& r) {
  if (!r.has_unit_axis()) throw MalformedRotation("rotation axis is not a unit vector");
  using std::cos;
  using std::sin;
  const auto& v = s.vector();
  const Scalar c = cos(r.angle);
  const Scalar sn = sin(r.angle);
  Vec3<Scalar> out = v * c + r.axis.cross(v) * sn + r.axis * (r.axis.dot(v) * (1 - c));
  // Round-off can leave a pure state a few ulps outside the ball.
  const Scalar n2 = out.squaredNorm();
  if (n2 > 1) out /= std::sqrt(n2);
  return BlochState<Scalar>(out);
}

template <typename Scalar>
Scalar azimuth(const BlochState<Scalar>& s) {
  if (s.x() == 0 && s.y() == 0) throw DegenerateAzimuth("azimuth undefined on the z-axis");
  Scalar phi = std::atan2(s.y(), s.x());
  if (phi < 0) phi += 2 * std::numbers::pi_v<Scalar>;
  if (phi >= 2 * std::numbers::pi_v<Scalar>) phi = 0;
  return phi;
}

// Returns pi/2 for the completely mixed state.
template <typename Scalar>
Scalar polar_angle(const BlochState<Scalar>& s) {
  const Scalar r = s.norm();
  if (r == 0) return std::numbers::pi_v<Scalar> / 2;
  return std::acos(std::clamp(s.z() / r, Scalar(-1), Scalar(1)));
}

}  // namespace qfb

#include "gaze4d/core/pose.hpp"

#include <cmath>

#include "gaze4d/core/errors.hpp"

namespace gaze4d {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSmallAngle = 1e-10;
}  // namespace

Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
  return m;
}

double Pose::rotation_angle() const {
  double w = std::min(1.0, std::abs(q_.w()));
  return 2.0 * std::acos(w);
}

Pose Pose::exp(const Twist& xi) {
  const Vec3 omega = rotational(xi);
  const Vec3 v = translational(xi);
  const double theta2 = omega.squaredNorm();
  const double theta = std::sqrt(theta2);

  Mat3 R, V;
  const Mat3 Omega = skew(omega);
  if (theta < kSmallAngle) {
    // Taylor expansions around theta = 0.
    R = Mat3::Identity() + Omega + 0.5 * Omega * Omega;
    V = Mat3::Identity() + 0.5 * Omega + (1.0 / 6.0) * Omega * Omega;
  } else {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    R = Mat3::Identity() + (s / theta) * Omega +
        ((1.0 - c) / theta2) * Omega * Omega;
    V = Mat3::Identity() + ((1.0 - c) / theta2) * Omega +
        ((theta - s) / (theta2 * theta)) * Omega * Omega;
  }
  return Pose(R, Vec3(V * v));
}

Twist Pose::log() const {
  const double angle = rotation_angle();
  if (angle > kPi - 1e-6) {
    throw GeometryError("se3_log: rotation angle within 1e-6 of pi");
  }

  Vec3 omega;
  const Vec3 axis_part(q_.x(), q_.y(), q_.z());
  const double n = axis_part.norm();
  if (n < kSmallAngle) {
    omega = 2.0 * axis_part;  // small-angle: q approx (1, omega/2)
  } else {
    // Guard against a negated quaternion (same rotation, w < 0).
    const double w = q_.w();
    const double theta = 2.0 * std::atan2(n, std::abs(w));
    omega = (w >= 0 ? 1.0 : -1.0) * (theta / n) * axis_part;
  }

  const double theta2 = omega.squaredNorm();
  const double theta = std::sqrt(theta2);
  const Mat3 Omega = skew(omega);
  Mat3 Vinv;
  if (theta < kSmallAngle) {
    Vinv = Mat3::Identity() - 0.5 * Omega + (1.0 / 12.0) * Omega * Omega;
  } else {
    const double half = 0.5 * theta;
    const double cot_term = (1.0 - half * std::cos(half) / std::sin(half)) / theta2;
    Vinv = Mat3::Identity() - 0.5 * Omega + cot_term * Omega * Omega;
  }

  Twist xi;
  xi.head<3>() = omega;
  xi.tail<3>() = Vinv * t_;
  return xi;
}

bool Pose::is_approx(const Pose& other, double tol) const {
  const double dt = (t_ - other.t_).norm();
  // Quaternion distance up to sign.
  const double dq = std::min((q_.coeffs() - other.q_.coeffs()).norm(),
                             (q_.coeffs() + other.q_.coeffs()).norm());
  return dt <= tol && dq <= tol;
}

}  // namespace gaze4d

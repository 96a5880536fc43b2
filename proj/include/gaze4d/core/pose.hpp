#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace gaze4d {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Quat = Eigen::Quaterniond;

/// Tangent-space parameterization of SE(3) increments.
/// Layout: [0..2] rotational part (rad), [3..5] translational part (m).
using Twist = Eigen::Matrix<double, 6, 1>;

inline Vec3 rotational(const Twist& xi) { return xi.head<3>(); }
inline Vec3 translational(const Twist& xi) { return xi.tail<3>(); }

/// Rigid transform in SE(3), stored as unit quaternion + translation.
///
/// A Pose maps points from its "source" frame to its "target" frame:
/// a camera pose T_world_cam takes camera-frame points into the world.
class Pose {
public:
  Pose() : q_(Quat::Identity()), t_(Vec3::Zero()) {}
  Pose(const Quat& q, const Vec3& t) : q_(q.normalized()), t_(t) {}
  Pose(const Mat3& R, const Vec3& t) : q_(Quat(R).normalized()), t_(t) {}

  static Pose identity() { return Pose(); }
  static Pose from_matrix(const Mat4& T) {
    return Pose(Mat3(T.topLeftCorner<3, 3>()), Vec3(T.topRightCorner<3, 1>()));
  }

  const Quat& rotation() const { return q_; }
  const Vec3& translation() const { return t_; }

  Mat3 rotation_matrix() const { return q_.toRotationMatrix(); }
  Mat4 matrix() const {
    Mat4 T = Mat4::Identity();
    T.topLeftCorner<3, 3>() = rotation_matrix();
    T.topRightCorner<3, 1>() = t_;
    return T;
  }

  Vec3 operator*(const Vec3& p) const { return q_ * p + t_; }

  /// Composition: (a * b) applies b first, then a.
  Pose operator*(const Pose& rhs) const {
    return Pose(q_ * rhs.q_, q_ * rhs.t_ + t_);
  }

  Pose inverse() const {
    Quat qi = q_.conjugate();
    return Pose(qi, qi * (-t_));
  }

  /// Rotation angle in radians, in [0, pi].
  double rotation_angle() const;

  /// Exponential map: twist -> rigid transform (full SE(3) exp).
  static Pose exp(const Twist& xi);

  /// Logarithm map. Throws GeometryError within 1e-6 of angle pi.
  Twist log() const;

  bool is_approx(const Pose& other, double tol = 1e-9) const;

private:
  Quat q_;
  Vec3 t_;
};

inline Pose se3_compose(const Pose& a, const Pose& b) { return a * b; }
inline Pose se3_exp(const Twist& xi) { return Pose::exp(xi); }
inline Twist se3_log(const Pose& T) { return T.log(); }

Mat3 skew(const Vec3& v);

}  // namespace gaze4d

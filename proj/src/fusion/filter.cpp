#include "gaze4d/fusion/filter.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "gaze4d/core/errors.hpp"

namespace gaze4d {

namespace {

Quat quat_exp(const Vec3& theta) {
  const double angle = theta.norm();
  if (angle < 1e-12) {
    Quat q(1.0, 0.5 * theta.x(), 0.5 * theta.y(), 0.5 * theta.z());
    q.normalize();
    return q;
  }
  const Vec3 axis = theta / angle;
  return Quat(Eigen::AngleAxisd(angle, axis));
}

}  // namespace

PoseFilter::PoseFilter(FilterConfig config, Vec3 gravity_world)
    : config_(config), gravity_(gravity_world) {}

void PoseFilter::initialize(const FusedState& state) {
  state_ = state;
  initialized_ = true;
}

void PoseFilter::predict(const ImuSample& imu) {
  if (!initialized_) throw StreamError("filter not initialized");
  const double dt = imu.t - state_.t;
  if (dt <= 0.0)
    throw StreamError("non-monotonic IMU timestamp");
  if (dt >= config_.max_imu_dt)
    throw StreamError("IMU gap exceeds maximum step");

  const Vec3 w = imu.w - state_.gyro_bias;
  const Vec3 a = imu.a - state_.accel_bias;
  const Mat3 R = state_.pose.rotation_matrix();
  const Vec3 a_world = R * a + gravity_;

  // Strapdown mean propagation (zero-order hold).
  const Vec3 p = state_.pose.translation() + state_.velocity * dt +
                 0.5 * a_world * dt * dt;
  const Vec3 v = state_.velocity + a_world * dt;
  const Quat q = (state_.pose.rotation() * quat_exp(w * dt)).normalized();
  state_.pose = Pose(q, p);
  state_.velocity = v;
  state_.t = imu.t;

  // First-order error-state transition for [δθ, δp, δv, δbg, δba].
  Mat15 F = Mat15::Zero();
  F.block<3, 3>(0, 0) = -skew(w);
  F.block<3, 3>(0, 9) = -Mat3::Identity();
  F.block<3, 3>(3, 6) = Mat3::Identity();
  F.block<3, 3>(6, 0) = -R * skew(a);
  F.block<3, 3>(6, 12) = -R;
  const Mat15 Phi = Mat15::Identity() + F * dt;

  Mat15 Q = Mat15::Zero();
  const double gn2 = config_.gyro_noise * config_.gyro_noise;
  const double an2 = config_.accel_noise * config_.accel_noise;
  const double gw2 = config_.gyro_bias_walk * config_.gyro_bias_walk;
  const double aw2 = config_.accel_bias_walk * config_.accel_bias_walk;
  Q.block<3, 3>(0, 0) = Mat3::Identity() * gn2 * dt;
  Q.block<3, 3>(6, 6) = Mat3::Identity() * an2 * dt;
  Q.block<3, 3>(9, 9) = Mat3::Identity() * gw2 * dt;
  Q.block<3, 3>(12, 12) = Mat3::Identity() * aw2 * dt;

  state_.covariance = Phi * state_.covariance * Phi.transpose() + Q;
  state_.covariance =
      0.5 * (state_.covariance + state_.covariance.transpose());
}

UpdateResult PoseFilter::update(const Pose& vision_T_world_cam,
                                double vision_t, const Mat66& vision_cov,
                                const Extrinsics& extrinsics) {
  if (!initialized_) throw StreamError("filter not initialized");
  UpdateResult res;
  const double delay = state_.t - vision_t;
  if (delay > config_.max_vision_delay) {
    res.delayed_drop = true;
    return res;  // too old to apply without re-propagation
  }

  const Pose T_imu_cam = extrinsics.T_cam_imu.inverse();
  const Mat3 R_ic = T_imu_cam.rotation_matrix();
  const Vec3 p_ic = T_imu_cam.translation();
  const Pose pred_cam = state_.pose * T_imu_cam;

  // Residual: rotation in the predicted camera frame, translation in world.
  Eigen::Matrix<double, 6, 1> r;
  const Quat dq =
      pred_cam.rotation().conjugate() * vision_T_world_cam.rotation();
  const Eigen::AngleAxisd aa(dq.normalized());
  r.head<3>() = aa.angle() * aa.axis();
  r.tail<3>() = vision_T_world_cam.translation() - pred_cam.translation();

  Eigen::Matrix<double, 6, 15> H = Eigen::Matrix<double, 6, 15>::Zero();
  H.block<3, 3>(0, 0) = R_ic.transpose();
  H.block<3, 3>(3, 0) = -state_.pose.rotation_matrix() * skew(p_ic);
  H.block<3, 3>(3, 3) = Mat3::Identity();

  const Mat66 S = H * state_.covariance * H.transpose() + vision_cov;
  const Mat66 S_inv = S.inverse();
  res.mahalanobis = r.dot(S_inv * r);
  if (res.mahalanobis > config_.gate_chi2) return res;  // rejected

  const Eigen::Matrix<double, 15, 6> K =
      state_.covariance * H.transpose() * S_inv;
  const Eigen::Matrix<double, 15, 1> dx = K * r;

  state_.pose = Pose(
      (state_.pose.rotation() * quat_exp(dx.segment<3>(0))).normalized(),
      state_.pose.translation() + dx.segment<3>(3));
  state_.velocity += dx.segment<3>(6);
  state_.gyro_bias += dx.segment<3>(9);
  state_.accel_bias += dx.segment<3>(12);

  const Mat15 IKH = Mat15::Identity() - K * H;
  state_.covariance = IKH * state_.covariance * IKH.transpose() +
                      K * vision_cov * K.transpose();
  state_.covariance =
      0.5 * (state_.covariance + state_.covariance.transpose());
  res.accepted = true;
  return res;
}

UpdateResult PoseFilter::update(const Pose& vision_T_world_cam,
                                double vision_t,
                                const Extrinsics& extrinsics) {
  return update(vision_T_world_cam, vision_t,
                vision_covariance(config_.vision_sigma_rot_deg * M_PI / 180.0,
                                  config_.vision_sigma_trans),
                extrinsics);
}

Pose PoseFilter::initial_guess(const Extrinsics& extrinsics,
                               double target_t) const {
  if (!initialized_) throw StreamError("filter not initialized");
  const double dt = target_t - state_.t;
  const Pose advanced(state_.pose.rotation(),
                      state_.pose.translation() + state_.velocity * dt);
  return advanced * extrinsics.T_cam_imu.inverse();
}

Mat66 PoseFilter::vision_covariance(double sigma_rot_rad,
                                    double sigma_trans) {
  Mat66 cov = Mat66::Zero();
  cov.topLeftCorner<3, 3>() =
      Mat3::Identity() * sigma_rot_rad * sigma_rot_rad;
  cov.bottomRightCorner<3, 3>() =
      Mat3::Identity() * sigma_trans * sigma_trans;
  return cov;
}

Quat attitude_from_gravity(const Vec3& mean_accel) {
  if (mean_accel.norm() < 1e-6)
    throw StreamError("accelerometer mean too small for attitude init");
  // At rest the accelerometer reads R_wbᵀ·(-g_world) = R_wbᵀ·|g|·ez, so the
  // body-frame mean must map to +z under R_wb.
  return Quat::FromTwoVectors(mean_accel.normalized(), Vec3::UnitZ());
}

}  // namespace gaze4d

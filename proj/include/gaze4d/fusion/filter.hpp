#pragma once

#include <Eigen/Core>

#include "gaze4d/core/pose.hpp"

namespace gaze4d {

// One inertial measurement: body-frame angular rate and specific force
// (includes gravity).
struct ImuSample {
  double t = 0.0;  // [s]
  Vec3 w = Vec3::Zero();  // [rad/s]
  Vec3 a = Vec3::Zero();  // [m/s²]
};

// Fixed camera <- IMU transform.
struct Extrinsics {
  Pose T_cam_imu;
};

struct FilterConfig {
  double gyro_noise = 1e-3;        // [rad/s/√Hz]
  double accel_noise = 1e-2;       // [m/s²/√Hz]
  double gyro_bias_walk = 1e-4;    // [rad/s/√s]
  double accel_bias_walk = 1e-3;   // [m/s²/√s]
  double vision_sigma_rot_deg = 1.0;
  double vision_sigma_trans = 0.02;  // [m]
  double max_imu_dt = 0.1;           // [s]
  double max_vision_delay = 0.05;    // [s]
  double gate_chi2 = 22.458;         // χ²₀.₉₉₉ for 6 DoF
};

using Mat15 = Eigen::Matrix<double, 15, 15>;
using Mat66 = Eigen::Matrix<double, 6, 6>;

// Filter mean and error-state covariance. Error-state ordering:
// [δθ, δp, δv, δbg, δba] with local attitude error R = R̂·exp([δθ]×).
struct FusedState {
  double t = 0.0;
  Pose pose;  // world <- IMU body
  Vec3 velocity = Vec3::Zero();
  Vec3 gyro_bias = Vec3::Zero();
  Vec3 accel_bias = Vec3::Zero();
  Mat15 covariance = Mat15::Identity() * 1e-4;
};

struct UpdateResult {
  bool accepted = false;
  bool delayed_drop = false;  // vision pose older than the delay budget
  double mahalanobis = 0.0;
};

// Loosely-coupled error-state Kalman filter over [δθ, δp, δv, δbg, δba]:
// strapdown IMU propagation at sample rate, corrected by 6-DoF camera poses
// from the localizer mapped through the extrinsics.
class PoseFilter {
public:
  explicit PoseFilter(FilterConfig config = {},
                      Vec3 gravity_world = Vec3(0, 0, -9.81));

  void initialize(const FusedState& state);
  bool initialized() const { return initialized_; }
  const FusedState& state() const { return state_; }
  const Vec3& gravity() const { return gravity_; }

  // Strapdown propagation to imu.t (zero-order hold) plus first-order
  // covariance transition. Throws StreamError on non-monotonic timestamps
  // or dt >= max_imu_dt.
  void predict(const ImuSample& imu);

  // 6-DoF pose correction from a vision pose T_world_cam measured at
  // vision_t <= state.t. Residuals gated at chi² (6 DoF); poses older than
  // max_vision_delay are dropped. Applies the Joseph-form covariance
  // update.
  UpdateResult update(const Pose& vision_T_world_cam, double vision_t,
                      const Mat66& vision_cov, const Extrinsics& extrinsics);
  // Same, with the configured default vision covariance.
  UpdateResult update(const Pose& vision_T_world_cam, double vision_t,
                      const Extrinsics& extrinsics);

  // Camera pose predicted at target_t by constant-velocity extrapolation of
  // the current state: the localizer's next initial guess.
  Pose initial_guess(const Extrinsics& extrinsics, double target_t) const;

  // Diagonal vision covariance from per-axis standard deviations.
  static Mat66 vision_covariance(double sigma_rot_rad, double sigma_trans);

private:
  FilterConfig config_;
  Vec3 gravity_;
  FusedState state_;
  bool initialized_ = false;
};

// Attitude whose body z-axis accel matches the given rest-averaged
// accelerometer mean (yaw unobservable, chosen zero-ish).
Quat attitude_from_gravity(const Vec3& mean_accel);

}  // namespace gaze4d

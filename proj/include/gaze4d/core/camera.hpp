#pragma once

#include <Eigen/Core>

#include "gaze4d/core/pose.hpp"

namespace gaze4d {

using Vec2 = Eigen::Vector2d;

/// Pinhole camera model. Inputs are assumed pre-rectified (no distortion).
struct CameraIntrinsics {
  double fx = 0, fy = 0;  // focal lengths [px]
  double cx = 0, cy = 0;  // principal point [px]
  int width = 0, height = 0;

  void validate() const;

  /// Intrinsics of the half-resolution pyramid level, pixel centers at +0.5.
  CameraIntrinsics half() const {
    CameraIntrinsics k;
    k.fx = 0.5 * fx;
    k.fy = 0.5 * fy;
    k.cx = 0.5 * (cx + 0.5) - 0.5;
    k.cy = 0.5 * (cy + 0.5) - 0.5;
    k.width = width / 2;
    k.height = height / 2;
    return k;
  }
};

/// A world-space ray with unit direction.
struct Ray {
  Vec3 origin;
  Vec3 direction;
};

/// Projects a camera-frame point to pixel coordinates.
/// Throws GeometryError for z <= 1e-9 (behind or on the camera plane).
Vec2 project(const CameraIntrinsics& K, const Vec3& p_cam);

/// Back-projects a pixel at the given metric depth (z-distance).
Vec3 unproject(const CameraIntrinsics& K, const Vec2& px, double depth);

/// World-space ray through a gaze pixel. Throws InvalidSampleError when the
/// pixel lies outside the image bounds.
Ray gaze_ray(const CameraIntrinsics& K, const Pose& T_world_cam,
             const Vec2& gaze_px);

}  // namespace gaze4d

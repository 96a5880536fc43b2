#include "gaze4d/core/camera.hpp"

#include "gaze4d/core/errors.hpp"

namespace gaze4d {

void CameraIntrinsics::validate() const {
  if (fx <= 0 || fy <= 0) throw ConfigError("camera: fx, fy must be positive");
  if (width <= 0 || height <= 0) throw ConfigError("camera: empty image size");
  if (cx < 0 || cx >= width || cy < 0 || cy >= height)
    throw ConfigError("camera: principal point outside the image");
}

Vec2 project(const CameraIntrinsics& K, const Vec3& p_cam) {
  if (p_cam.z() <= 1e-9)
    throw GeometryError("project: point behind the camera");
  const double iz = 1.0 / p_cam.z();
  return {K.fx * p_cam.x() * iz + K.cx, K.fy * p_cam.y() * iz + K.cy};
}

Vec3 unproject(const CameraIntrinsics& K, const Vec2& px, double depth) {
  return {(px.x() - K.cx) / K.fx * depth, (px.y() - K.cy) / K.fy * depth,
          depth};
}

Ray gaze_ray(const CameraIntrinsics& K, const Pose& T_world_cam,
             const Vec2& gaze_px) {
  if (gaze_px.x() < 0 || gaze_px.x() > K.width || gaze_px.y() < 0 ||
      gaze_px.y() > K.height) {
    throw InvalidSampleError("gaze_ray: gaze pixel outside image bounds");
  }
  const Vec3 dir_cam = unproject(K, gaze_px, 1.0).normalized();
  return {T_world_cam.translation(),
          Vec3(T_world_cam.rotation() * dir_cam)};
}

}  // namespace gaze4d

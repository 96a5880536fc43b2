#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gaze4d/core/mesh.hpp"
#include "gaze4d/fusion/filter.hpp"
#include "gaze4d/pipeline/config.hpp"

namespace gaze4d {

// Axis-aligned box shell with a 3x2 per-face texture atlas; each face is an
// n x n quad grid (12·n² triangles). Used both for rooms (viewed from
// inside) and small props.
TexturedMesh make_box_mesh(const Vec3& center, const Vec3& half_extents,
                           int subdivisions);

// Single quad in the XY plane, centered at the origin, normal +z, full
// [0,1]² UVs.
TexturedMesh make_quad_mesh(double side_x, double side_y);

// Smooth multi-frequency sinusoid textures: wide tracking basin, clean
// finite differences. The atlas variant fills 3x2 cells with distinct
// phases/frequencies.
RgbImage make_atlas_texture(int cell_size, uint64_t seed);
RgbImage make_quad_texture(int size, uint64_t seed);

// Analytic camera/body trajectory: per-axis position sinusoids plus yaw
// and pitch sinusoids around a base orientation, all with closed-form
// derivatives (exact velocity, acceleration, body angular rate).
class SinusoidTrack {
public:
  Vec3 p0 = Vec3::Zero();
  Vec3 amp = Vec3::Zero();
  Vec3 freq = Vec3::Zero();   // [Hz]
  Vec3 phase = Vec3::Constant(M_PI / 2);  // extremes at t=0: zero velocity
  Mat3 base_rotation = Mat3::Identity();
  double yaw_amp = 0.0, yaw_freq = 0.0, yaw_phase = M_PI / 2;    // [rad], [Hz]
  double pitch_amp = 0.0, pitch_freq = 0.0, pitch_phase = M_PI / 2;

  Vec3 position(double t) const;
  Vec3 velocity(double t) const;
  Vec3 acceleration(double t) const;
  Mat3 rotation(double t) const;
  Vec3 angular_velocity_body(double t) const;
  Pose pose(double t) const { return Pose(rotation(t), position(t)); }
};

// Camera base orientation: optical axis along world +x, image x along
// world -y, image y along world -z (z-up world).
Mat3 camera_base_rotation();

// IMU samples over [t0, t1] at the given rate: each sample carries the
// interval-end timestamp and the analytic rates evaluated at the interval
// midpoint, so zero-order-hold re-integration reproduces the track.
std::vector<ImuSample> synthesize_imu(const SinusoidTrack& track, double t0,
                                      double t1, double rate,
                                      const Vec3& gravity_world);

// Generation parameters, read from the [generate] config block.
struct GenerateSpec {
  double duration = 6.0;
  double frame_rate = 25.0;
  double gaze_rate = 100.0;
  double imu_rate = 200.0;

  Vec3 room_size = Vec3(10.0, 10.0, 3.0);
  int room_subdivisions = 1;
  int texture_cell = 512;

  double board_distance = 2.0;  // camera to board along +x [m]
  double board_side = 0.24;
  Vec3 board_motion_amp = Vec3(0.0, 0.06, 0.04);
  Vec3 board_motion_freq = Vec3(0.0, 0.35, 0.5);
  bool with_prop_box = true;  // third instance for clutter

  Vec3 camera_amp = Vec3(0.015, 0.02, 0.01);
  Vec3 camera_freq = Vec3(0.30, 0.23, 0.40);
  double camera_yaw_amp_deg = 1.5, camera_yaw_freq = 0.27;
  double camera_pitch_amp_deg = 0.8, camera_pitch_freq = 0.21;

  double gaze_bias_deg = 0.0;
  double gaze_noise_deg = 0.3;
  double blink_rate = 0.0;
  double imu_gyro_noise = 0.0;   // corrupting white noise [rad/s]
  double imu_accel_noise = 0.0;  // [m/s²]
  double image_noise = 0.0;      // luminance sigma [0..255]
};

GenerateSpec load_generate_spec(const TomlTable& raw);

// Builds a complete synthetic session under out_dir: meshes and textures,
// rendered frames + index, IMU/gaze/instance-pose streams, ground-truth
// camera and target trajectories, and a ready-to-run session.toml. Returns
// the path of the emitted config.
std::string generate_session(const PipelineConfig& cfg,
                             const GenerateSpec& spec,
                             const std::string& out_dir);

}  // namespace gaze4d

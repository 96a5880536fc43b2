#include "gaze4d/pipeline/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

#include "gaze4d/core/errors.hpp"
#include "gaze4d/core/obj_io.hpp"
#include "gaze4d/core/png_io.hpp"
#include "gaze4d/eval/trajectory.hpp"
#include "gaze4d/gaze/streams.hpp"
#include "gaze4d/render/rasterizer.hpp"

namespace gaze4d {

namespace fs = std::filesystem;

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Fraction of an atlas cell kept as an inward UV margin so bilinear lookups
// never bleed across cell borders.
constexpr double kCellInset = 0.01;

struct Face {
  int axis;      // constant axis
  double sign;   // +1 or -1
  int ub, vb;    // the two varying axes
};

constexpr Face kFaces[6] = {
    {0, -1.0, 1, 2},  // -x
    {0, +1.0, 1, 2},  // +x
    {1, -1.0, 0, 2},  // -y
    {1, +1.0, 0, 2},  // +y
    {2, -1.0, 0, 1},  // floor
    {2, +1.0, 0, 1},  // ceiling
};

}  // namespace

TexturedMesh make_box_mesh(const Vec3& center, const Vec3& half_extents,
                           int subdivisions) {
  if (subdivisions < 1) throw GeometryError("subdivisions must be >= 1");
  const int n = subdivisions;
  TexturedMesh mesh;
  for (int f = 0; f < 6; ++f) {
    const Face& face = kFaces[f];
    const int col = f % 3, row = f / 3;
    const double u0 = (col + kCellInset) / 3.0;
    const double u1 = (col + 1 - kCellInset) / 3.0;
    const double v0 = (row + kCellInset) / 2.0;
    const double v1 = (row + 1 - kCellInset) / 2.0;

    const int base = static_cast<int>(mesh.vertices.size());
    for (int j = 0; j <= n; ++j) {
      for (int i = 0; i <= n; ++i) {
        const double s = static_cast<double>(i) / n;
        const double t = static_cast<double>(j) / n;
        Vec3 p = center;
        p[face.axis] += face.sign * half_extents[face.axis];
        p[face.ub] += (2.0 * s - 1.0) * half_extents[face.ub];
        p[face.vb] += (2.0 * t - 1.0) * half_extents[face.vb];
        mesh.vertices.push_back(p.cast<float>());
        mesh.uv.emplace_back(static_cast<float>(u0 + (u1 - u0) * s),
                             static_cast<float>(v0 + (v1 - v0) * t));
      }
    }
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const uint32_t a = static_cast<uint32_t>(base + j * (n + 1) + i);
        const uint32_t b = a + 1;
        const uint32_t c = a + static_cast<uint32_t>(n + 1);
        const uint32_t d = c + 1;
        mesh.triangles.push_back({a, b, d});
        mesh.triangles.push_back({a, d, c});
      }
    }
  }
  return mesh;
}

TexturedMesh make_quad_mesh(double side_x, double side_y) {
  TexturedMesh mesh;
  const float hx = 0.5f * static_cast<float>(side_x);
  const float hy = 0.5f * static_cast<float>(side_y);
  mesh.vertices = {Vec3f(-hx, -hy, 0), Vec3f(hx, -hy, 0), Vec3f(hx, hy, 0),
                   Vec3f(-hx, hy, 0)};
  mesh.uv = {Vec2f(0, 0), Vec2f(1, 0), Vec2f(1, 1), Vec2f(0, 1)};
  mesh.triangles = {{0, 1, 2}, {0, 2, 3}};
  return mesh;
}

namespace {

// Sum of three sinusoid plane waves across a cell; values stay well inside
// [0,255] so bilinear filtering and luminance conversion never clip.
struct SinePattern {
  struct Wave {
    double fx, fy, phase, amp;
  };
  Wave waves[3];
  Wave chirp;  // quadratic-phase wave: breaks translational self-similarity

  static SinePattern random(std::mt19937_64& rng, double max_freq) {
    std::uniform_real_distribution<double> radius(2.2, max_freq);
    std::uniform_real_distribution<double> jitter(-0.3, 0.3);
    std::uniform_real_distribution<double> ph(0.0, kTwoPi);
    const double amps[3] = {40.0, 30.0, 20.0};
    SinePattern p;
    for (int k = 0; k < 3; ++k) {
      // Orientations spread ~60 deg apart so the gradient never vanishes
      // over large patches, frequencies irrational-ish so nothing repeats.
      const double theta = k * (M_PI / 3.0) + jitter(rng);
      const double r = radius(rng);
      p.waves[k] = {r * std::cos(theta), r * std::sin(theta), ph(rng),
                    amps[k]};
    }
    std::uniform_real_distribution<double> cf(1.2, 2.8);
    p.chirp = {cf(rng), cf(rng), ph(rng), 18.0};
    return p;
  }

  uint8_t eval(double x, double y, double cell) const {
    double v = 128.0;
    for (const Wave& w : waves)
      v += w.amp * std::sin(kTwoPi * (w.fx * x + w.fy * y) / cell + w.phase);
    v += chirp.amp * std::sin(kTwoPi *
                                  (chirp.fx * x * x + chirp.fy * y * y) /
                                  (cell * cell) +
                              chirp.phase);
    return static_cast<uint8_t>(std::lround(std::clamp(v, 1.0, 254.0)));
  }
};

}  // namespace

RgbImage make_atlas_texture(int cell_size, uint64_t seed) {
  std::mt19937_64 rng(seed);
  RgbImage img(3 * cell_size, 2 * cell_size);
  for (int f = 0; f < 6; ++f) {
    const SinePattern pat = SinePattern::random(rng, 6);
    const int x0 = (f % 3) * cell_size, y0 = (f / 3) * cell_size;
    for (int y = 0; y < cell_size; ++y) {
      for (int x = 0; x < cell_size; ++x) {
        const uint8_t g = pat.eval(x, y, cell_size);
        img.at(x0 + x, y0 + y, 0) = g;
        img.at(x0 + x, y0 + y, 1) = g;
        img.at(x0 + x, y0 + y, 2) = g;
      }
    }
  }
  return img;
}

RgbImage make_quad_texture(int size, uint64_t seed) {
  std::mt19937_64 rng(seed);
  const SinePattern pat = SinePattern::random(rng, 5);
  RgbImage img(size, size);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const uint8_t g = pat.eval(x, y, size);
      img.at(x, y, 0) = g;
      img.at(x, y, 1) = g;
      img.at(x, y, 2) = g;
    }
  }
  return img;
}

Vec3 SinusoidTrack::position(double t) const {
  Vec3 p = p0;
  for (int i = 0; i < 3; ++i)
    p[i] += amp[i] * std::sin(kTwoPi * freq[i] * t + phase[i]);
  return p;
}

Vec3 SinusoidTrack::velocity(double t) const {
  Vec3 v = Vec3::Zero();
  for (int i = 0; i < 3; ++i) {
    const double w = kTwoPi * freq[i];
    v[i] = amp[i] * w * std::cos(w * t + phase[i]);
  }
  return v;
}

Vec3 SinusoidTrack::acceleration(double t) const {
  Vec3 a = Vec3::Zero();
  for (int i = 0; i < 3; ++i) {
    const double w = kTwoPi * freq[i];
    a[i] = -amp[i] * w * w * std::sin(w * t + phase[i]);
  }
  return a;
}

Mat3 SinusoidTrack::rotation(double t) const {
  const double yaw = yaw_amp * std::sin(kTwoPi * yaw_freq * t + yaw_phase);
  const double pitch =
      pitch_amp * std::sin(kTwoPi * pitch_freq * t + pitch_phase);
  return Eigen::AngleAxisd(yaw, Vec3::UnitZ()).toRotationMatrix() *
         base_rotation *
         Eigen::AngleAxisd(pitch, Vec3::UnitX()).toRotationMatrix();
}

Vec3 SinusoidTrack::angular_velocity_body(double t) const {
  // R = Rz(yaw) * R0 * Rx(pitch): body rates compose as
  // w = B^T w_A + w_B with B = R0 * Rx(pitch).
  const double wy = kTwoPi * yaw_freq;
  const double wp = kTwoPi * pitch_freq;
  const double yaw_rate = yaw_amp * wy * std::cos(wy * t + yaw_phase);
  const double pitch = pitch_amp * std::sin(wp * t + pitch_phase);
  const double pitch_rate = pitch_amp * wp * std::cos(wp * t + pitch_phase);
  const Mat3 B =
      base_rotation *
      Eigen::AngleAxisd(pitch, Vec3::UnitX()).toRotationMatrix();
  return B.transpose() * (yaw_rate * Vec3::UnitZ()) +
         pitch_rate * Vec3::UnitX();
}

Mat3 camera_base_rotation() {
  Mat3 r;
  // Optical axis +x, image right -y, image down -z (camera z forward,
  // y down; world z up).
  r.col(0) = Vec3(0, -1, 0);
  r.col(1) = Vec3(0, 0, -1);
  r.col(2) = Vec3(1, 0, 0);
  return r;
}

std::vector<ImuSample> synthesize_imu(const SinusoidTrack& track, double t0,
                                      double t1, double rate,
                                      const Vec3& gravity_world) {
  if (rate <= 0.0 || t1 <= t0)
    throw GeometryError("IMU synthesis needs a positive rate and span");
  const double dt = 1.0 / rate;
  const int n = static_cast<int>(std::lround((t1 - t0) * rate));
  std::vector<ImuSample> out;
  out.reserve(n);
  for (int k = 1; k <= n; ++k) {
    const double tm = t0 + (k - 0.5) * dt;  // interval midpoint
    ImuSample s;
    s.t = t0 + k * dt;
    const Mat3 R = track.rotation(tm);
    s.w = track.angular_velocity_body(tm);
    s.a = R.transpose() * (track.acceleration(tm) - gravity_world);
    out.push_back(s);
  }
  return out;
}

GenerateSpec load_generate_spec(const TomlTable& t) {
  GenerateSpec s;
  s.duration = t.get_double("generate.duration", s.duration);
  s.frame_rate = t.get_double("generate.frame_rate", s.frame_rate);
  s.gaze_rate = t.get_double("generate.gaze_rate", s.gaze_rate);
  s.imu_rate = t.get_double("generate.imu_rate", s.imu_rate);
  if (s.duration <= 0 || s.frame_rate <= 0 || s.gaze_rate <= 0 ||
      s.imu_rate <= 0)
    throw ConfigError(t.origin() + ": generate rates must be positive");

  if (t.has("generate.room")) {
    const auto v = t.get_doubles("generate.room");
    if (v.size() != 3)
      throw ConfigError(t.origin() + ": generate.room needs 3 numbers");
    s.room_size = Vec3(v[0], v[1], v[2]);
  }
  s.room_subdivisions = static_cast<int>(
      t.get_int("generate.room_subdivisions", s.room_subdivisions));
  s.texture_cell =
      static_cast<int>(t.get_int("generate.texture_cell", s.texture_cell));

  s.board_distance =
      t.get_double("generate.board_distance", s.board_distance);
  s.board_side = t.get_double("generate.board_side", s.board_side);
  auto vec3_of = [&](const char* key, Vec3 fallback) {
    if (!t.has(key)) return fallback;
    const auto v = t.get_doubles(key);
    if (v.size() != 3)
      throw ConfigError(t.origin() + ": " + key + " needs 3 numbers");
    return Vec3(v[0], v[1], v[2]);
  };
  s.board_motion_amp =
      vec3_of("generate.board_motion_amp", s.board_motion_amp);
  s.board_motion_freq =
      vec3_of("generate.board_motion_freq", s.board_motion_freq);
  s.with_prop_box = t.get_bool("generate.with_prop_box", s.with_prop_box);

  s.camera_amp = vec3_of("generate.camera_amp", s.camera_amp);
  s.camera_freq = vec3_of("generate.camera_freq", s.camera_freq);
  s.camera_yaw_amp_deg =
      t.get_double("generate.camera_yaw_amp_deg", s.camera_yaw_amp_deg);
  s.camera_yaw_freq =
      t.get_double("generate.camera_yaw_freq", s.camera_yaw_freq);
  s.camera_pitch_amp_deg =
      t.get_double("generate.camera_pitch_amp_deg", s.camera_pitch_amp_deg);
  s.camera_pitch_freq =
      t.get_double("generate.camera_pitch_freq", s.camera_pitch_freq);

  s.gaze_bias_deg = t.get_double("generate.gaze_bias_deg", s.gaze_bias_deg);
  s.gaze_noise_deg =
      t.get_double("generate.gaze_noise_deg", s.gaze_noise_deg);
  s.blink_rate = t.get_double("generate.blink_rate", s.blink_rate);
  s.imu_gyro_noise =
      t.get_double("generate.imu_gyro_noise", s.imu_gyro_noise);
  s.imu_accel_noise =
      t.get_double("generate.imu_accel_noise", s.imu_accel_noise);
  s.image_noise = t.get_double("generate.image_noise", s.image_noise);
  return s;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_array(const std::vector<double>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += fmt(v[i]);
  }
  return s + "]";
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw StreamError("cannot write " + path);
  f << text;
}

}  // namespace

std::string generate_session(const PipelineConfig& cfg,
                             const GenerateSpec& spec,
                             const std::string& out_dir) {
  const CameraIntrinsics& K = cfg.camera;
  fs::create_directories(fs::path(out_dir) / "assets");
  fs::create_directories(fs::path(out_dir) / "frames");

  // --- scene assets ---
  const Vec3 room = spec.room_size;
  auto room_mesh = std::make_shared<TexturedMesh>(make_box_mesh(
      Vec3(0, 0, 0.5 * room.z()), 0.5 * room, spec.room_subdivisions));
  room_mesh->texture = make_atlas_texture(spec.texture_cell, cfg.seed * 6364136223846793005ULL + 1);
  save_obj(*room_mesh, out_dir + "/assets/room.obj");
  save_png(room_mesh->texture, out_dir + "/assets/room.png");

  auto board_mesh =
      std::make_shared<TexturedMesh>(make_quad_mesh(spec.board_side, spec.board_side));
  board_mesh->texture = make_quad_texture(256, cfg.seed * 2862933555777941757ULL + 2);
  save_obj(*board_mesh, out_dir + "/assets/board.obj");
  save_png(board_mesh->texture, out_dir + "/assets/board.png");

  std::shared_ptr<TexturedMesh> prop_mesh;
  if (spec.with_prop_box) {
    prop_mesh = std::make_shared<TexturedMesh>(
        make_box_mesh(Vec3::Zero(), Vec3(0.09, 0.06, 0.12), 1));
    prop_mesh->texture = make_atlas_texture(64, cfg.seed * 3935559000370003845ULL + 3);
    save_obj(*prop_mesh, out_dir + "/assets/prop.obj");
    save_png(prop_mesh->texture, out_dir + "/assets/prop.png");
  }

  // --- trajectories ---
  const double eye_z = 0.5 * room.z();
  SinusoidTrack cam;
  cam.p0 = Vec3(0, 0, eye_z);
  cam.amp = spec.camera_amp;
  cam.freq = spec.camera_freq;
  cam.base_rotation = camera_base_rotation();
  cam.yaw_amp = spec.camera_yaw_amp_deg * M_PI / 180.0;
  cam.yaw_freq = spec.camera_yaw_freq;
  cam.pitch_amp = spec.camera_pitch_amp_deg * M_PI / 180.0;
  cam.pitch_freq = spec.camera_pitch_freq;

  SinusoidTrack board;
  board.p0 = Vec3(spec.board_distance, 0, eye_z);
  board.amp = spec.board_motion_amp;
  board.freq = spec.board_motion_freq;
  // Board quad normal (+z in mesh frame) turned to face the camera (-x).
  board.base_rotation =
      Eigen::AngleAxisd(-M_PI / 2, Vec3::UnitY()).toRotationMatrix();

  const Pose prop_pose(Quat::Identity(), Vec3(1.4, -0.5, 1.3));

  const int n_frames =
      static_cast<int>(std::lround(spec.duration * spec.frame_rate));
  const int n_gaze =
      static_cast<int>(std::lround(spec.duration * spec.gaze_rate));
  if (n_frames < 2) throw ConfigError("session too short for two frames");

  // Camera must stay inside the mapped volume.
  for (int k = 0; k < n_frames; ++k) {
    const double t = k / spec.frame_rate;
    const Vec3 p = cam.position(t);
    const double margin = 0.3;
    if (std::abs(p.x()) > 0.5 * room.x() - margin ||
        std::abs(p.y()) > 0.5 * room.y() - margin ||
        p.z() < margin || p.z() > room.z() - margin)
      throw GeometryError("camera leaves map coverage at t=" + fmt(t));
  }

  // --- scene instances (generation-side ground truth) ---
  SceneInstance map_inst;
  map_inst.instance_id = 1;
  map_inst.category = Category::kMap;
  map_inst.mesh = room_mesh;
  map_inst.id_texture = {2048, 2048};

  SceneInstance board_inst;
  board_inst.instance_id = 2;
  board_inst.category = Category::kObject;
  board_inst.mesh = board_mesh;
  board_inst.id_texture = {256, 256};

  SceneInstance prop_inst;
  if (spec.with_prop_box) {
    prop_inst.instance_id = 3;
    prop_inst.category = Category::kHuman;
    prop_inst.mesh = prop_mesh;
    prop_inst.pose = prop_pose;
    prop_inst.id_texture = {256, 256};
  }

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  // --- frames, ground-truth camera, instance pose stream ---
  std::vector<double> frame_times(n_frames);
  std::vector<Pose> board_poses(n_frames);
  Trajectory gt_camera;
  std::vector<InstancePoseEvent> pose_events;
  std::string frames_csv = "t,path\n";
  for (int k = 0; k < n_frames; ++k) {
    const double t = k / spec.frame_rate;
    frame_times[k] = t;
    const Pose cam_pose = cam.pose(t);
    board_poses[k] = board.pose(t);
    gt_camera.push(t, cam_pose);
    pose_events.push_back({t, board_inst.instance_id, board_poses[k]});

    std::vector<SceneInstance> scene = {map_inst, board_inst};
    scene[1].pose = board_poses[k];
    if (spec.with_prop_box) scene.push_back(prop_inst);
    RenderOutput out = render(scene, cam_pose, K);

    if (spec.image_noise > 0.0) {
      uint8_t* d = out.color.data();
      const size_t count = static_cast<size_t>(out.color.width()) *
                           out.color.height() * 3;
      for (size_t i = 0; i < count; ++i) {
        const double v = d[i] + spec.image_noise * gauss(rng);
        d[i] = static_cast<uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
      }
    }

    char name[64];
    std::snprintf(name, sizeof(name), "frames/frame_%05d.png", k);
    save_png(out.color, out_dir + "/" + name);
    char row[96];
    std::snprintf(row, sizeof(row), "%.6f,%s\n", t, name);
    frames_csv += row;
  }
  write_text(out_dir + "/frames.csv", frames_csv);
  save_tum(gt_camera, out_dir + "/gt_camera.tum");
  save_instance_poses_jsonl(pose_events, out_dir + "/instances.jsonl");

  // --- IMU ---
  std::vector<ImuSample> imu =
      synthesize_imu(cam, 0.0, spec.duration, spec.imu_rate, Vec3(0, 0, -9.81));
  if (spec.imu_gyro_noise > 0.0 || spec.imu_accel_noise > 0.0) {
    for (ImuSample& s : imu) {
      for (int i = 0; i < 3; ++i) {
        s.w[i] += spec.imu_gyro_noise * gauss(rng);
        s.a[i] += spec.imu_accel_noise * gauss(rng);
      }
    }
  }
  save_imu_csv(imu, out_dir + "/imu.csv");

  // --- gaze pointed at the board center, with systematic bias + noise ---
  // Samples use the camera/board poses of their nearest frame, matching the
  // zero-order-hold the runner applies when it maps them. gaze_noise_deg is
  // the standard deviation of the total angular deviation, so each of the
  // two perpendicular components gets sigma/sqrt(2).
  const double bias = spec.gaze_bias_deg * M_PI / 180.0;
  const double sigma = spec.gaze_noise_deg * M_PI / 180.0 / std::sqrt(2.0);
  std::vector<GazeSample> gaze;
  Trajectory gt_target;
  for (int k = 0; k < n_gaze; ++k) {
    const double t = k / spec.gaze_rate;
    const int j = std::min(
        n_frames - 1,
        static_cast<int>(std::lround(t * spec.frame_rate)));
    GazeSample s;
    s.t = t;
    if (spec.blink_rate > 0.0 && unif(rng) < spec.blink_rate) {
      s.valid = false;
      s.u = s.v = 0.5;
      gaze.push_back(s);
      continue;
    }
    const Pose cam_pose = cam.pose(frame_times[j]);
    const Vec3 target = board_poses[j].translation();
    gt_target.push(t, target, board_poses[j].rotation());

    const Vec3 dir_cam = cam_pose.inverse() * target;
    if (dir_cam.z() < 1e-6) {
      s.valid = false;
      gaze.push_back(s);
      continue;
    }
    const Vec3 p = dir_cam.normalized();
    // Orthonormal frame around the view ray: h roughly horizontal in the
    // image, q roughly vertical. Bias tilts the ray downward in the image.
    Vec3 h = Vec3::UnitY().cross(p);
    if (h.norm() < 1e-9) h = Vec3::UnitX();
    h.normalize();
    const Vec3 q = p.cross(h);
    const double dv = bias + sigma * gauss(rng);
    const double dh = sigma * gauss(rng);
    const Vec3 d = (p + std::tan(dh) * h + std::tan(dv) * q).normalized();

    const Vec2 px = project(K, d);
    s.u = px.x() / K.width;
    s.v = px.y() / K.height;
    if (s.u < 0.0 || s.u >= 1.0 || s.v < 0.0 || s.v >= 1.0) s.valid = false;
    gaze.push_back(s);
  }
  save_gaze_jsonl(gaze, out_dir + "/gaze.jsonl");
  save_tum(gt_target, out_dir + "/gt_target.tum");

  // --- runnable session config ---
  std::string toml;
  toml += "[session]\n";
  toml += "out_dir = \"out\"\n";
  toml += "seed = " + std::to_string(cfg.seed) + "\n";
  toml += "frames = \"frames.csv\"\n";
  toml += "imu = \"imu.csv\"\n";
  toml += "gaze = \"gaze.jsonl\"\n";
  toml += "instance_poses = \"instances.jsonl\"\n";
  toml += "gt_camera = \"gt_camera.tum\"\n";
  toml += "gt_target = \"gt_target.tum\"\n";
  toml += "start_pose = " + fmt_array(pose_to_array(cam.pose(0.0))) + "\n\n";

  toml += "[camera]\n";
  toml += "fx = " + fmt(K.fx) + "\nfy = " + fmt(K.fy) + "\n";
  toml += "cx = " + fmt(K.cx) + "\ncy = " + fmt(K.cy) + "\n";
  toml += "width = " + std::to_string(K.width) +
          "\nheight = " + std::to_string(K.height) + "\n";
  toml += "fps = " + fmt(spec.frame_rate) + "\n\n";

  toml += "[map]\n";
  toml += "obj = \"assets/room.obj\"\n";
  toml += "texture = \"assets/room.png\"\n";
  toml += "instance_id = 1\nid_width = 2048\nid_height = 2048\n\n";

  toml += "[instances.board]\n";
  toml += "instance_id = 2\ncategory = \"object\"\n";
  toml += "obj = \"assets/board.obj\"\n";
  toml += "texture = \"assets/board.png\"\n";
  toml += "id_width = 256\nid_height = 256\ndynamic = true\n\n";

  if (spec.with_prop_box) {
    toml += "[instances.prop]\n";
    toml += "instance_id = 3\ncategory = \"human\"\n";
    toml += "obj = \"assets/prop.obj\"\n";
    toml += "texture = \"assets/prop.png\"\n";
    toml += "id_width = 256\nid_height = 256\n";
    toml += "pose = " + fmt_array(pose_to_array(prop_pose)) + "\n\n";
  }

  const TrackerConfig& tr = cfg.tracker;
  toml += "[tracker]\n";
  toml += "pyramid_levels = " + std::to_string(tr.pyramid_levels) + "\n";
  toml += "max_iterations = " + std::to_string(tr.max_iterations) + "\n";
  toml += "step_tol = " + fmt(tr.step_tol) + "\n";
  toml += "min_overlap = " + fmt(tr.min_overlap) + "\n";
  toml += "rekey_translation = " + fmt(tr.rekey_translation) + "\n";
  toml += "rekey_rotation_deg = " + fmt(tr.rekey_rotation_deg) + "\n";
  toml += "rekey_nid = " + fmt(tr.rekey_nid) + "\n";
  toml += "pixel_stride = " + std::to_string(tr.pixel_stride) + "\n\n";

  const FilterConfig& fu = cfg.fusion;
  toml += "[fusion]\n";
  toml += "gyro_noise = " + fmt(fu.gyro_noise) + "\n";
  toml += "accel_noise = " + fmt(fu.accel_noise) + "\n";
  toml += "gyro_bias_walk = " + fmt(fu.gyro_bias_walk) + "\n";
  toml += "accel_bias_walk = " + fmt(fu.accel_bias_walk) + "\n";
  toml += "vision_sigma_rot_deg = " + fmt(fu.vision_sigma_rot_deg) + "\n";
  toml += "vision_sigma_trans = " + fmt(fu.vision_sigma_trans) + "\n";
  toml += "max_vision_delay = " + fmt(fu.max_vision_delay) + "\n\n";

  toml += "[mapper]\n";
  toml += "association_tolerance = " + fmt(cfg.mapper_tolerance) + "\n";
  toml += "footprint_radius = " + std::to_string(cfg.footprint_radius) +
          "\n\n";

  toml += "[evaluation]\n";
  toml += "max_dt = " + fmt(cfg.eval_max_dt) + "\n";
  toml += "target_instance = 2\n";

  const std::string config_path = out_dir + "/session.toml";
  write_text(config_path, toml);
  return config_path;
}

}  // namespace gaze4d

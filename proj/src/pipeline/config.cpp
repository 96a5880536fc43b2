#include "gaze4d/pipeline/config.hpp"

#include <filesystem>

#include "gaze4d/core/errors.hpp"

namespace gaze4d {

namespace fs = std::filesystem;

std::string resolve_path(const std::string& base_dir,
                         const std::string& path) {
  if (path.empty()) return path;
  const fs::path p(path);
  if (p.is_absolute()) return path;
  return (fs::path(base_dir) / p).lexically_normal().string();
}

Pose pose_from_array(const std::vector<double>& v) {
  if (v.size() != 7)
    throw ConfigError("pose array must hold tx ty tz qx qy qz qw");
  const Quat q(v[6], v[3], v[4], v[5]);
  if (q.norm() < 1e-9) throw ConfigError("pose array quaternion is zero");
  return Pose(q, Vec3(v[0], v[1], v[2]));
}

std::vector<double> pose_to_array(const Pose& pose) {
  const Vec3& t = pose.translation();
  const Quat& q = pose.rotation();
  return {t.x(), t.y(), t.z(), q.x(), q.y(), q.z(), q.w()};
}

namespace {

Category category_from_string(const std::string& s, const TomlTable& t) {
  if (s == "map") return Category::kMap;
  if (s == "object") return Category::kObject;
  if (s == "human") return Category::kHuman;
  throw ConfigError(t.origin() + ": unknown category '" + s +
                    "' (expected map/object/human)");
}

InstanceConfig load_instance(const TomlTable& t, const std::string& prefix,
                             const std::string& name,
                             const std::string& base_dir,
                             int64_t default_id = -1) {
  InstanceConfig ic;
  ic.name = name;
  const int64_t id = default_id > 0
                         ? t.get_int(prefix + ".instance_id", default_id)
                         : t.get_int(prefix + ".instance_id");
  if (id < 1 || id > 255)
    throw ConfigError(t.origin() + ": " + prefix +
                      ".instance_id must be in 1..255");
  ic.instance_id = static_cast<uint8_t>(id);
  ic.category =
      category_from_string(t.get_string(prefix + ".category", "object"), t);
  ic.obj_path = resolve_path(base_dir, t.get_string(prefix + ".obj"));
  ic.texture_path =
      resolve_path(base_dir, t.get_string(prefix + ".texture"));
  ic.semantic_path =
      resolve_path(base_dir, t.get_string(prefix + ".semantic", ""));
  ic.id_width = static_cast<int>(t.get_int(prefix + ".id_width", 256));
  ic.id_height = static_cast<int>(t.get_int(prefix + ".id_height", 256));
  if (ic.id_width <= 0 || ic.id_height <= 0)
    throw ConfigError(t.origin() + ": " + prefix +
                      " ID texture dimensions must be positive");
  ic.dynamic = t.get_bool(prefix + ".dynamic", false);
  if (t.has(prefix + ".pose"))
    ic.static_pose = pose_from_array(t.get_doubles(prefix + ".pose"));
  return ic;
}

}  // namespace

PipelineConfig load_pipeline_config(const std::string& path) {
  TomlTable t;
  try {
    t = TomlTable::parse_file(path);
  } catch (const ParseError& e) {
    throw ConfigError(e.what());  // config syntax problems are config errors
  }

  PipelineConfig cfg;
  cfg.config_dir = fs::path(path).parent_path().string();
  if (cfg.config_dir.empty()) cfg.config_dir = ".";
  cfg.raw = t;

  cfg.out_dir =
      resolve_path(cfg.config_dir, t.get_string("session.out_dir", "out"));
  const int64_t seed = t.get_int("session.seed", 1);
  if (seed < 0) throw ConfigError(t.origin() + ": session.seed must be >= 0");
  cfg.seed = static_cast<uint64_t>(seed);

  cfg.camera.fx = t.get_double("camera.fx");
  cfg.camera.fy = t.get_double("camera.fy");
  cfg.camera.cx = t.get_double("camera.cx");
  cfg.camera.cy = t.get_double("camera.cy");
  cfg.camera.width = static_cast<int>(t.get_int("camera.width"));
  cfg.camera.height = static_cast<int>(t.get_int("camera.height"));
  try {
    cfg.camera.validate();
  } catch (const Error& e) {
    throw ConfigError(t.origin() + ": " + e.what());
  }
  cfg.frame_rate = t.get_double("camera.fps", 25.0);
  if (cfg.frame_rate <= 0.0)
    throw ConfigError(t.origin() + ": camera.fps must be positive");

  if (t.has("map.obj")) {  // absent in generator input configs
    cfg.map = load_instance(t, "map", "map", cfg.config_dir, 1);
    cfg.map.category = Category::kMap;
    if (!t.has("map.id_width")) {
      cfg.map.id_width = 2048;
      cfg.map.id_height = 2048;
    }
  }
  for (const std::string& name : t.subtables("instances"))
    cfg.instances.push_back(
        load_instance(t, "instances." + name, name, cfg.config_dir));
  for (size_t i = 0; i < cfg.instances.size(); ++i) {
    if (cfg.instances[i].instance_id == cfg.map.instance_id)
      throw ConfigError(t.origin() + ": instance id collides with the map");
    for (size_t j = i + 1; j < cfg.instances.size(); ++j)
      if (cfg.instances[i].instance_id == cfg.instances[j].instance_id)
        throw ConfigError(t.origin() + ": duplicate instance ids");
  }

  TrackerConfig& tr = cfg.tracker;
  tr.pyramid_levels =
      static_cast<int>(t.get_int("tracker.pyramid_levels", 3));
  tr.max_iterations =
      static_cast<int>(t.get_int("tracker.max_iterations", 50));
  tr.step_tol = t.get_double("tracker.step_tol", 1e-5);
  tr.min_overlap = t.get_double("tracker.min_overlap", 0.10);
  tr.rekey_translation = t.get_double("tracker.rekey_translation", 0.3);
  tr.rekey_rotation_deg = t.get_double("tracker.rekey_rotation_deg", 8.0);
  tr.rekey_nid = t.get_double("tracker.rekey_nid", 0.7);
  tr.pixel_stride = static_cast<int>(t.get_int("tracker.pixel_stride", 1));
  if (tr.pyramid_levels < 1 || tr.max_iterations < 1 || tr.pixel_stride < 1)
    throw ConfigError(t.origin() + ": tracker parameters out of range");

  FilterConfig& fu = cfg.fusion;
  fu.gyro_noise = t.get_double("fusion.gyro_noise", fu.gyro_noise);
  fu.accel_noise = t.get_double("fusion.accel_noise", fu.accel_noise);
  fu.gyro_bias_walk =
      t.get_double("fusion.gyro_bias_walk", fu.gyro_bias_walk);
  fu.accel_bias_walk =
      t.get_double("fusion.accel_bias_walk", fu.accel_bias_walk);
  fu.vision_sigma_rot_deg =
      t.get_double("fusion.vision_sigma_rot_deg", fu.vision_sigma_rot_deg);
  fu.vision_sigma_trans =
      t.get_double("fusion.vision_sigma_trans", fu.vision_sigma_trans);
  fu.max_vision_delay =
      t.get_double("fusion.max_vision_delay", fu.max_vision_delay);
  if (t.has("fusion.extrinsics")) {
    const std::vector<double> m = t.get_doubles("fusion.extrinsics");
    if (m.size() != 16)
      throw ConfigError(t.origin() +
                        ": fusion.extrinsics must be a 4x4 row-major array");
    Mat4 T;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) T(r, c) = m[r * 4 + c];
    cfg.extrinsics.T_cam_imu = Pose::from_matrix(T);
  }

  cfg.mapper_tolerance = t.get_double("mapper.association_tolerance", 0.025);
  cfg.footprint_radius =
      static_cast<int>(t.get_int("mapper.footprint_radius", 0));
  cfg.eval_max_dt = t.get_double("evaluation.max_dt", 0.05);
  cfg.eval_target_instance =
      static_cast<int>(t.get_int("evaluation.target_instance", 0));
  if (cfg.mapper_tolerance <= 0.0 || cfg.footprint_radius < 0 ||
      cfg.eval_max_dt <= 0.0)
    throw ConfigError(t.origin() + ": mapper/evaluation parameters out of range");

  cfg.frames_csv = resolve_path(cfg.config_dir,
                                t.get_string("session.frames", ""));
  cfg.imu_path =
      resolve_path(cfg.config_dir, t.get_string("session.imu", ""));
  cfg.gaze_path =
      resolve_path(cfg.config_dir, t.get_string("session.gaze", ""));
  cfg.instance_pose_path = resolve_path(
      cfg.config_dir, t.get_string("session.instance_poses", ""));
  cfg.gt_camera_path =
      resolve_path(cfg.config_dir, t.get_string("session.gt_camera", ""));
  cfg.gt_target_path =
      resolve_path(cfg.config_dir, t.get_string("session.gt_target", ""));
  if (t.has("session.start_pose"))
    cfg.start_pose = t.get_doubles("session.start_pose");
  if (!cfg.start_pose.empty() && cfg.start_pose.size() != 7)
    throw ConfigError(t.origin() + ": session.start_pose needs 7 numbers");

  return cfg;
}

}  // namespace gaze4d

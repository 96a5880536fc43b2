#pragma once

#include <string>
#include <vector>

#include "gaze4d/core/camera.hpp"
#include "gaze4d/fusion/filter.hpp"
#include "gaze4d/localize/tracker.hpp"
#include "gaze4d/pipeline/toml.hpp"
#include "gaze4d/render/scene.hpp"

namespace gaze4d {

// One scene instance as declared in the config.
struct InstanceConfig {
  std::string name;
  uint8_t instance_id = 0;
  Category category = Category::kObject;
  std::string obj_path;
  std::string texture_path;
  std::string semantic_path;  // optional 8-bit label texture
  int id_width = 256;
  int id_height = 256;
  bool dynamic = false;       // poses come from the instance pose stream
  Pose static_pose;           // used when not dynamic
};

struct PipelineConfig {
  std::string config_dir;
  std::string out_dir;
  uint64_t seed = 1;

  CameraIntrinsics camera;
  double frame_rate = 25.0;

  InstanceConfig map;  // instance_id 1, category kMap
  std::vector<InstanceConfig> instances;

  TrackerConfig tracker;
  FilterConfig fusion;
  Extrinsics extrinsics;  // camera <- IMU, identity by default

  double mapper_tolerance = 0.025;  // gaze-to-frame association [s]
  int footprint_radius = 0;
  double eval_max_dt = 0.05;
  int eval_target_instance = 0;  // restrict gaze APE to one instance; 0 = all

  // Session stream paths (absolute after loading).
  std::string frames_csv;
  std::string imu_path;
  std::string gaze_path;
  std::string instance_pose_path;
  std::string gt_camera_path;
  std::string gt_target_path;
  std::vector<double> start_pose;  // tx ty tz qx qy qz qw; empty -> use gt

  TomlTable raw;  // verb-specific blocks ([generate], [debug])
};

// Parses and validates a pipeline TOML config. Relative paths are resolved
// against the config file's directory. Throws ConfigError on any problem
// (including TOML syntax errors).
PipelineConfig load_pipeline_config(const std::string& path);

// Path resolution helper used across the pipeline.
std::string resolve_path(const std::string& base_dir,
                         const std::string& path);

// Parses `tx ty tz qx qy qz qw` arrays into a pose.
Pose pose_from_array(const std::vector<double>& v);
std::vector<double> pose_to_array(const Pose& pose);

}  // namespace gaze4d

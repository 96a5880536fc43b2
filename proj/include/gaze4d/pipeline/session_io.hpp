#pragma once

#include <map>
#include <string>
#include <vector>

#include "gaze4d/eval/trajectory.hpp"
#include "gaze4d/gaze/streams.hpp"
#include "gaze4d/pipeline/config.hpp"

namespace gaze4d {

// All recorded streams of one session, loaded and cross-validated.
struct SessionBundle {
  std::vector<double> frame_times;
  std::vector<std::string> frame_paths;  // absolute
  std::vector<ImuSample> imu;
  std::vector<GazeSample> gaze;
  std::map<uint8_t, InstancePoseTrack> instance_tracks;
  Trajectory gt_camera;  // empty when not recorded
  Trajectory gt_target;
};

// frames.csv: `t,path` rows (header optional), strictly increasing times.
void load_frames_csv(const std::string& path, const std::string& base_dir,
                     std::vector<double>& times,
                     std::vector<std::string>& paths);

// Loads every stream referenced by the config. Throws StreamError when a
// required stream is missing, out of order, or the frame span is not
// covered by the IMU stream.
SessionBundle load_session(const PipelineConfig& cfg);

}  // namespace gaze4d

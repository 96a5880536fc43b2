#pragma once

#include <map>
#include <string>
#include <vector>

#include "gaze4d/fusion/filter.hpp"
#include "gaze4d/gaze/gaze_mapper.hpp"

namespace gaze4d {

// Gaze stream: one JSON object per line, {"t":…, "u":…, "v":…, "valid":…}.
std::vector<GazeSample> load_gaze_jsonl(const std::string& path);
void save_gaze_jsonl(const std::vector<GazeSample>& samples,
                     const std::string& path);

// Instance pose stream: {"t":…, "id":…, "q":[w,x,y,z], "p":[x,y,z]} lines,
// time-ordered, possibly interleaving instances.
struct InstancePoseEvent {
  double t = 0.0;
  uint8_t id = 0;
  Pose pose;
};
std::vector<InstancePoseEvent> load_instance_poses_jsonl(
    const std::string& path);
void save_instance_poses_jsonl(const std::vector<InstancePoseEvent>& events,
                               const std::string& path);
// Groups events into per-instance tracks (validates monotonic timestamps).
std::map<uint8_t, InstancePoseTrack> group_instance_tracks(
    const std::vector<InstancePoseEvent>& events);

// IMU stream: CSV lines `t,wx,wy,wz,ax,ay,az` (with optional header) or
// JSONL objects with the same keys; chosen by file extension (.csv/.jsonl).
std::vector<ImuSample> load_imu(const std::string& path);
void save_imu_csv(const std::vector<ImuSample>& samples,
                  const std::string& path);

}  // namespace gaze4d

#include "gaze4d/pipeline/session_io.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>

#include "gaze4d/core/errors.hpp"

namespace gaze4d {

namespace fs = std::filesystem;

void load_frames_csv(const std::string& path, const std::string& base_dir,
                     std::vector<double>& times,
                     std::vector<std::string>& paths) {
  std::ifstream f(path);
  if (!f) throw StreamError("cannot open frame index " + path);
  times.clear();
  paths.clear();
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (!std::isdigit(static_cast<unsigned char>(line[0])) &&
        line[0] != '-' && line[0] != '+' && line[0] != '.')
      continue;  // header
    const size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw StreamError(path + ":" + std::to_string(lineno) +
                        ": expected `t,path`");
    size_t pos = 0;
    double t = 0.0;
    try {
      t = std::stod(line.substr(0, comma), &pos);
    } catch (const std::exception&) {
      throw StreamError(path + ":" + std::to_string(lineno) +
                        ": bad timestamp");
    }
    std::string p = line.substr(comma + 1);
    while (!p.empty() && (p.back() == '\r' || p.back() == ' ')) p.pop_back();
    if (p.empty())
      throw StreamError(path + ":" + std::to_string(lineno) +
                        ": empty frame path");
    if (!times.empty() && t <= times.back())
      throw StreamError(path + ":" + std::to_string(lineno) +
                        ": frame timestamps must be strictly increasing");
    times.push_back(t);
    paths.push_back(resolve_path(base_dir, p));
  }
  if (times.empty()) throw StreamError(path + ": no frames listed");
}

SessionBundle load_session(const PipelineConfig& cfg) {
  SessionBundle b;
  if (cfg.frames_csv.empty())
    throw StreamError("config lists no frame index (session.frames)");
  if (cfg.imu_path.empty())
    throw StreamError("config lists no IMU stream (session.imu)");

  const std::string frames_dir = fs::path(cfg.frames_csv).parent_path().string();
  load_frames_csv(cfg.frames_csv, frames_dir.empty() ? "." : frames_dir,
                  b.frame_times, b.frame_paths);
  for (const std::string& p : b.frame_paths)
    if (!fs::exists(p)) throw StreamError("missing frame image " + p);

  b.imu = load_imu(cfg.imu_path);
  if (b.imu.empty()) throw StreamError(cfg.imu_path + ": empty IMU stream");

  // Frames must fall inside the IMU record (small head slack: the first
  // frame may precede the first sample by up to one nominal interval).
  const double head = b.imu.size() > 1 ? b.imu[1].t - b.imu[0].t : 0.1;
  if (b.frame_times.front() < b.imu.front().t - 2.0 * head - 1e-9 ||
      b.frame_times.back() > b.imu.back().t + 1e-9)
    throw StreamError("frame timestamps not covered by the IMU stream");

  if (!cfg.gaze_path.empty()) b.gaze = load_gaze_jsonl(cfg.gaze_path);
  if (!cfg.instance_pose_path.empty())
    b.instance_tracks =
        group_instance_tracks(load_instance_poses_jsonl(cfg.instance_pose_path));
  if (!cfg.gt_camera_path.empty() && fs::exists(cfg.gt_camera_path))
    b.gt_camera = load_tum(cfg.gt_camera_path);
  if (!cfg.gt_target_path.empty() && fs::exists(cfg.gt_target_path))
    b.gt_target = load_tum(cfg.gt_target_path);
  return b;
}

}  // namespace gaze4d

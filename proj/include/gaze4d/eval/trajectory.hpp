#pragma once

#include <string>
#include <vector>

#include "gaze4d/core/pose.hpp"

namespace gaze4d {

// Time-stamped positions with optional orientations.
struct Trajectory {
  std::vector<double> t;
  std::vector<Vec3> p;
  std::vector<Quat> q;  // empty when no orientations are carried

  size_t size() const { return t.size(); }
  bool empty() const { return t.empty(); }
  bool has_orientation() const { return !q.empty(); }

  // Appends a sample; throws StreamError on non-increasing timestamps.
  void push(double time, const Vec3& position);
  void push(double time, const Vec3& position, const Quat& orientation);
  void push(double time, const Pose& pose);

  Pose pose_at(size_t i) const;
};

// TUM trajectory format: `t tx ty tz qx qy qz qw` per line, '#' comments.
Trajectory load_tum(const std::string& path);
void save_tum(const Trajectory& traj, const std::string& path);

}  // namespace gaze4d

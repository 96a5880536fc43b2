#include "gaze4d/eval/trajectory.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gaze4d/core/errors.hpp"

namespace gaze4d {

void Trajectory::push(double time, const Vec3& position) {
  if (!t.empty() && time <= t.back())
    throw StreamError("trajectory timestamps must strictly increase");
  if (has_orientation())
    throw StreamError("mixed orientation/positions-only trajectory");
  t.push_back(time);
  p.push_back(position);
}

void Trajectory::push(double time, const Vec3& position,
                      const Quat& orientation) {
  if (!t.empty() && time <= t.back())
    throw StreamError("trajectory timestamps must strictly increase");
  if (!t.empty() && !has_orientation())
    throw StreamError("mixed orientation/positions-only trajectory");
  t.push_back(time);
  p.push_back(position);
  q.push_back(orientation.normalized());
}

void Trajectory::push(double time, const Pose& pose) {
  push(time, pose.translation(), pose.rotation());
}

Pose Trajectory::pose_at(size_t i) const {
  return Pose(has_orientation() ? q[i] : Quat::Identity(), p[i]);
}

Trajectory load_tum(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open trajectory: " + path);
  Trajectory traj;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    double t, tx, ty, tz, qx, qy, qz, qw;
    if (!(ls >> t >> tx >> ty >> tz >> qx >> qy >> qz >> qw))
      throw ParseError(path + ":" + std::to_string(line_no) +
                       ": expected `t tx ty tz qx qy qz qw`");
    try {
      traj.push(t, Vec3(tx, ty, tz), Quat(qw, qx, qy, qz));
    } catch (const StreamError& e) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": " +
                       e.what());
    }
  }
  return traj;
}

void save_tum(const Trajectory& traj, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write trajectory: " + path);
  out << "# t tx ty tz qx qy qz qw\n";
  char buf[256];
  for (size_t i = 0; i < traj.size(); ++i) {
    const Quat q = traj.has_orientation() ? traj.q[i] : Quat::Identity();
    std::snprintf(buf, sizeof(buf),
                  "%.9f %.9g %.9g %.9g %.12g %.12g %.12g %.12g\n", traj.t[i],
                  traj.p[i].x(), traj.p[i].y(), traj.p[i].z(), q.x(), q.y(),
                  q.z(), q.w());
    out << buf;
  }
}

}  // namespace gaze4d

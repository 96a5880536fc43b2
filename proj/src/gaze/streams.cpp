#include "gaze4d/gaze/streams.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gaze4d/core/errors.hpp"

namespace gaze4d {

namespace {

using nlohmann::json;

json parse_line(const std::string& line, const std::string& origin,
                int line_no) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw ParseError(origin + ":" + std::to_string(line_no) +
                     ": malformed JSON object");
  return j;
}

template <typename Fn>
void for_each_line(const std::string& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open stream file: " + path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    fn(line, line_no);
  }
}

}  // namespace

std::vector<GazeSample> load_gaze_jsonl(const std::string& path) {
  std::vector<GazeSample> samples;
  for_each_line(path, [&](const std::string& line, int line_no) {
    const json j = parse_line(line, path, line_no);
    try {
      GazeSample s;
      s.t = j.at("t").get<double>();
      s.u = j.at("u").get<double>();
      s.v = j.at("v").get<double>();
      s.valid = j.at("valid").get<bool>();
      samples.push_back(s);
    } catch (const json::exception& e) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": " +
                       e.what());
    }
  });
  return samples;
}

void save_gaze_jsonl(const std::vector<GazeSample>& samples,
                     const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write stream file: " + path);
  for (const GazeSample& s : samples) {
    json j;
    j["t"] = s.t;
    j["u"] = s.u;
    j["v"] = s.v;
    j["valid"] = s.valid;
    out << j.dump() << '\n';
  }
}

std::vector<InstancePoseEvent> load_instance_poses_jsonl(
    const std::string& path) {
  std::vector<InstancePoseEvent> events;
  for_each_line(path, [&](const std::string& line, int line_no) {
    const json j = parse_line(line, path, line_no);
    try {
      InstancePoseEvent e;
      e.t = j.at("t").get<double>();
      const int id = j.at("id").get<int>();
      if (id < 1 || id > 255)
        throw ParseError(path + ":" + std::to_string(line_no) +
                         ": instance id out of range");
      e.id = static_cast<uint8_t>(id);
      const auto& q = j.at("q");
      const auto& p = j.at("p");
      if (q.size() != 4 || p.size() != 3)
        throw ParseError(path + ":" + std::to_string(line_no) +
                         ": q must have 4 and p 3 entries");
      e.pose = Pose(Quat(q[0].get<double>(), q[1].get<double>(),
                         q[2].get<double>(), q[3].get<double>()),
                    Vec3(p[0].get<double>(), p[1].get<double>(),
                         p[2].get<double>()));
      events.push_back(e);
    } catch (const json::exception& ex) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": " +
                       ex.what());
    }
  });
  return events;
}

void save_instance_poses_jsonl(const std::vector<InstancePoseEvent>& events,
                               const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write stream file: " + path);
  for (const InstancePoseEvent& e : events) {
    json j;
    j["t"] = e.t;
    j["id"] = static_cast<int>(e.id);
    const Quat& q = e.pose.rotation();
    j["q"] = {q.w(), q.x(), q.y(), q.z()};
    const Vec3& p = e.pose.translation();
    j["p"] = {p.x(), p.y(), p.z()};
    out << j.dump() << '\n';
  }
}

std::map<uint8_t, InstancePoseTrack> group_instance_tracks(
    const std::vector<InstancePoseEvent>& events) {
  std::map<uint8_t, InstancePoseTrack> tracks;
  for (const InstancePoseEvent& e : events) {
    InstancePoseTrack& track = tracks[e.id];
    track.instance_id = e.id;
    track.push(e.t, e.pose);
  }
  return tracks;
}

namespace {

ImuSample imu_from_fields(const double f[7]) {
  ImuSample s;
  s.t = f[0];
  s.w = Vec3(f[1], f[2], f[3]);
  s.a = Vec3(f[4], f[5], f[6]);
  return s;
}

std::vector<ImuSample> load_imu_csv(const std::string& path) {
  std::vector<ImuSample> samples;
  for_each_line(path, [&](const std::string& line, int line_no) {
    const char c = line[0];
    if (c == '#' || !(std::isdigit(c) || c == '-' || c == '+' || c == '.'))
      return;  // comment or header row
    std::istringstream ls(line);
    double f[7];
    char comma;
    for (int i = 0; i < 7; ++i) {
      if (i > 0 && (!(ls >> comma) || comma != ','))
        throw ParseError(path + ":" + std::to_string(line_no) +
                         ": expected 7 comma-separated fields");
      if (!(ls >> f[i]))
        throw ParseError(path + ":" + std::to_string(line_no) +
                         ": expected 7 comma-separated fields");
    }
    samples.push_back(imu_from_fields(f));
  });
  return samples;
}

std::vector<ImuSample> load_imu_jsonl(const std::string& path) {
  std::vector<ImuSample> samples;
  for_each_line(path, [&](const std::string& line, int line_no) {
    const json j = parse_line(line, path, line_no);
    try {
      const double f[7] = {
          j.at("t").get<double>(),  j.at("wx").get<double>(),
          j.at("wy").get<double>(), j.at("wz").get<double>(),
          j.at("ax").get<double>(), j.at("ay").get<double>(),
          j.at("az").get<double>()};
      samples.push_back(imu_from_fields(f));
    } catch (const json::exception& e) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": " +
                       e.what());
    }
  });
  return samples;
}

}  // namespace

std::vector<ImuSample> load_imu(const std::string& path) {
  std::vector<ImuSample> samples;
  if (path.size() >= 6 && path.substr(path.size() - 6) == ".jsonl")
    samples = load_imu_jsonl(path);
  else
    samples = load_imu_csv(path);
  for (size_t i = 1; i < samples.size(); ++i)
    if (samples[i].t <= samples[i - 1].t)
      throw StreamError("IMU timestamps must strictly increase: " + path);
  return samples;
}

void save_imu_csv(const std::vector<ImuSample>& samples,
                  const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write stream file: " + path);
  out << "# t,wx,wy,wz,ax,ay,az\n";
  char buf[256];
  for (const ImuSample& s : samples) {
    std::snprintf(buf, sizeof(buf),
                  "%.9f,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", s.t,
                  s.w.x(), s.w.y(), s.w.z(), s.a.x(), s.a.y(), s.a.z());
    out << buf;
  }
}

}  // namespace gaze4d

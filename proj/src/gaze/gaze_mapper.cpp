#include "gaze4d/gaze/gaze_mapper.hpp"

#include <algorithm>
#include <cmath>

#include "gaze4d/core/errors.hpp"

namespace gaze4d {

std::optional<GazeHit> map_gaze(const RenderOutput& render,
                                const GazeSample& sample) {
  if (!sample.valid)
    throw InvalidSampleError("gaze sample marked invalid (blink)");
  if (sample.u < 0.0 || sample.u > 1.0 || sample.v < 0.0 || sample.v > 1.0)
    throw InvalidSampleError("gaze coordinates outside [0,1]");

  const int w = render.width();
  const int h = render.height();
  int px = static_cast<int>(std::floor(sample.u * w));
  int py = static_cast<int>(std::floor(sample.v * h));
  px = std::min(px, w - 1);  // u = 1.0 lands on the last column
  py = std::min(py, h - 1);

  const SurfaceHit s = lookup(render, px, py);
  if (!s.valid) return std::nullopt;

  GazeHit hit;
  hit.t = sample.t;
  hit.instance_id = s.instance_id;
  hit.category = s.category;
  hit.texel_x = s.texel_x;
  hit.texel_y = s.texel_y;
  const IdTexture& idt = render.instances.at(s.instance_id).id_texture;
  hit.id_width = idt.width;
  hit.id_height = idt.height;
  hit.world_point = s.world_point;
  hit.depth = s.depth;
  return hit;
}

void InstancePoseTrack::push(double t, const Pose& pose) {
  if (!samples.empty() && t <= samples.back().first)
    throw StreamError("instance pose timestamps must strictly increase");
  samples.emplace_back(t, pose);
}

std::optional<Pose> InstancePoseTrack::pose_at(double t) const {
  if (samples.empty() || t < samples.front().first) return std::nullopt;
  auto it = std::upper_bound(
      samples.begin(), samples.end(), t,
      [](double v, const std::pair<double, Pose>& s) { return v < s.first; });
  return std::prev(it)->second;
}

uint8_t resolve_semantics(const GazeHit& hit, const MaskImage* semantic) {
  if (!semantic) return 0;
  if (hit.id_width <= 0 || hit.id_height <= 0)
    throw InvalidSampleError("gaze hit carries no ID-texture dimensions");
  int sx = hit.texel_x * semantic->width() / hit.id_width;
  int sy = hit.texel_y * semantic->height() / hit.id_height;
  sx = std::min(sx, semantic->width() - 1);
  sy = std::min(sy, semantic->height() - 1);
  return semantic->at(sx, sy);
}

}  // namespace gaze4d

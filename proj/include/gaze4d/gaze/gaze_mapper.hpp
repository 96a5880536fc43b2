#pragma once

#include <optional>
#include <vector>

#include "gaze4d/render/rasterizer.hpp"

namespace gaze4d {

// One eye-tracker sample in normalized image coordinates.
struct GazeSample {
  double t = 0.0;
  double u = 0.0;  // [0,1], left to right
  double v = 0.0;  // [0,1], top to bottom
  bool valid = true;
};

// A gaze sample resolved to a 3D surface point.
struct GazeHit {
  double t = 0.0;
  uint8_t instance_id = 0;
  Category category = Category::kObject;
  int texel_x = 0;
  int texel_y = 0;
  int id_width = 0;   // ID-texture dimensions of the hit instance
  int id_height = 0;
  Vec3 world_point = Vec3::Zero();
  double depth = 0.0;
};

// Resolves a valid gaze sample against a render: pixel = floor(u·w, v·h),
// then the surface-ID lookup. Background yields nullopt. Throws
// InvalidSampleError for invalid samples or out-of-range coordinates.
std::optional<GazeHit> map_gaze(const RenderOutput& render,
                                const GazeSample& sample);

// Time-stamped pose sequence of one dynamic instance (world <- object).
struct InstancePoseTrack {
  uint8_t instance_id = 0;
  std::vector<std::pair<double, Pose>> samples;

  // Appends a sample; throws StreamError on non-increasing timestamps.
  void push(double t, const Pose& pose);

  // Zero-order hold: pose of the latest sample at or before t. nullopt
  // before the first sample (instance inactive, not rendered).
  std::optional<Pose> pose_at(double t) const;
};

// Nearest label of an 8-bit semantic texture at the hit texel, with the
// texel coordinates rescaled from the ID grid to the semantic grid.
// A missing texture (nullptr) resolves to label 0 (unlabeled).
uint8_t resolve_semantics(const GazeHit& hit, const MaskImage* semantic);

}  // namespace gaze4d

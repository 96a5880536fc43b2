#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>

#include "gaze4d/core/camera.hpp"
#include "gaze4d/core/image.hpp"
#include "gaze4d/core/mesh.hpp"
#include "gaze4d/core/pose.hpp"

namespace gaze4d {

// Scene categories carried in the 8-bit instance mask registry.
enum class Category : uint8_t { kMap = 1, kObject = 2, kHuman = 3 };

// Virtual ID texture: the texel at (x, y) holds the value y*width + x, so it
// is never stored — only its dimensions matter.
struct IdTexture {
  int width = 256;
  int height = 256;

  uint32_t value_at(int x, int y) const {
    return static_cast<uint32_t>(y) * static_cast<uint32_t>(width) +
           static_cast<uint32_t>(x);
  }
  // Inverse of value_at.
  std::pair<int, int> texel_of(uint32_t id) const {
    return {static_cast<int>(id % static_cast<uint32_t>(width)),
            static_cast<int>(id / static_cast<uint32_t>(width))};
  }
  void validate() const;
};

// One renderable object: mesh + pose + identity.
struct SceneInstance {
  uint8_t instance_id = 0;  // 1..255; 0 is reserved for background
  Category category = Category::kObject;
  std::shared_ptr<const TexturedMesh> mesh;
  Pose pose;  // T_world_instance
  IdTexture id_texture;

  void validate() const;
};

// Per-instance info snapshotted into a RenderOutput so hits can be decoded
// without the original scene.
struct InstanceInfo {
  Category category = Category::kObject;
  IdTexture id_texture;
};

// Aligned multi-target render result.
struct RenderOutput {
  RgbImage color;
  IdImage surface_id;      // kIdSentinel = background
  MaskImage instance_mask; // instance_id; 0 = background
  DepthImage depth;        // meters; +inf = background
  IdImage triangle_index;  // internal: winning triangle per pixel (diagnostics)
  Pose camera_pose;        // T_world_cam used for the render
  CameraIntrinsics intrinsics;
  std::map<uint8_t, InstanceInfo> instances;  // instance_id -> info

  int width() const { return color.width(); }
  int height() const { return color.height(); }
};

// Result of decoding one pixel of a RenderOutput.
struct SurfaceHit {
  bool valid = false;
  uint8_t instance_id = 0;
  Category category = Category::kObject;
  uint32_t texel_id = kIdSentinel;
  int texel_x = 0;
  int texel_y = 0;
  double depth = 0.0;
  Vec3 world_point = Vec3::Zero();
};

}  // namespace gaze4d

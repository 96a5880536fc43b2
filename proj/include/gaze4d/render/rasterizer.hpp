#pragma once

#include <vector>

#include "gaze4d/render/scene.hpp"

namespace gaze4d {

// Renders color, surface-ID, instance-mask and depth buffers for the given
// instances from camera pose T_world_cam. Deterministic: identical inputs
// produce byte-identical buffers. An empty instance list yields all-sentinel
// buffers.
RenderOutput render(const std::vector<SceneInstance>& instances,
                    const Pose& T_world_cam, const CameraIntrinsics& K);

// Color-only fast path; identical color values to render(...).color.
RgbImage render_keyframe(const SceneInstance& map_instance, const Pose& T,
                         const CameraIntrinsics& K);

// Decodes one pixel of a render into instance / texel / world-space terms.
// Background pixels return a hit with valid = false.
SurfaceHit lookup(const RenderOutput& out, int px, int py);

}  // namespace gaze4d

#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "gaze4d/core/image.hpp"
#include "gaze4d/core/pose.hpp"

namespace gaze4d {

using Vec3f = Eigen::Vector3f;
using Vec2f = Eigen::Vector2f;

/// Triangle mesh with a per-vertex UV atlas and an 8-bit color texture.
///
/// UV convention follows OBJ: u grows left to right, v grows bottom to top,
/// i.e. v = 0 addresses the last (bottom) texture row. Texture grids are
/// stored row-major with row 0 on top, matching PNG order.
struct TexturedMesh {
  std::vector<Vec3f> vertices;                    // positions [m]
  std::vector<std::array<uint32_t, 3>> triangles; // vertex indices
  std::vector<Vec2f> uv;                          // per-vertex, in [0,1]^2
  RgbImage texture;

  size_t triangle_count() const { return triangles.size(); }

  /// Checks index ranges, UV bounds (1e-6 slack) and triangle areas
  /// (rejects degenerate triangles below 1e-12 m^2). Throws ParseError.
  void validate() const;

  /// Area of triangle t in m^2.
  double triangle_area(size_t t) const;
};

/// Nearest-texel row/column for a UV coordinate on a w x h grid.
/// Returns texel (x, y) with y counted from the top row.
inline std::pair<int, int> uv_to_texel(float u, float v, int w, int h) {
  int x = static_cast<int>(u * w);
  int y = static_cast<int>((1.0f - v) * h);
  if (x < 0) x = 0;
  if (x >= w) x = w - 1;
  if (y < 0) y = 0;
  if (y >= h) y = h - 1;
  return {x, y};
}

/// Bilinear RGB sample at a UV coordinate (clamped at borders).
void sample_texture_bilinear(const RgbImage& tex, float u, float v,
                             uint8_t rgb[3]);

}  // namespace gaze4d

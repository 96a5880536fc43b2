#include "gaze4d/core/mesh.hpp"

#include <algorithm>
#include <cmath>

#include "gaze4d/core/errors.hpp"

namespace gaze4d {

double TexturedMesh::triangle_area(size_t t) const {
  const auto& tri = triangles[t];
  const Eigen::Vector3d a = vertices[tri[0]].cast<double>();
  const Eigen::Vector3d b = vertices[tri[1]].cast<double>();
  const Eigen::Vector3d c = vertices[tri[2]].cast<double>();
  return 0.5 * (b - a).cross(c - a).norm();
}

void TexturedMesh::validate() const {
  if (uv.size() != vertices.size())
    throw ParseError("mesh: UV count does not match vertex count");
  for (const auto& tri : triangles) {
    for (uint32_t idx : tri) {
      if (idx >= vertices.size())
        throw ParseError("mesh: triangle index out of range");
    }
  }
  constexpr float uv_tol = 1e-6f;
  for (const auto& t : uv) {
    if (t.x() < -uv_tol || t.x() > 1.f + uv_tol || t.y() < -uv_tol ||
        t.y() > 1.f + uv_tol) {
      throw ParseError("mesh: UV coordinate outside [0,1]");
    }
  }
  for (size_t t = 0; t < triangles.size(); ++t) {
    if (triangle_area(t) <= 1e-12)
      throw ParseError("mesh: degenerate triangle (area <= 1e-12 m^2)");
  }
}

void sample_texture_bilinear(const RgbImage& tex, float u, float v,
                             uint8_t rgb[3]) {
  const int w = tex.width();
  const int h = tex.height();
  // v = 0 is the bottom row; continuous texel coordinates with centers
  // at integer + 0.5.
  double xf = u * w - 0.5;
  double yf = (1.0 - v) * h - 0.5;
  int x0 = static_cast<int>(std::floor(xf));
  int y0 = static_cast<int>(std::floor(yf));
  const double fx = xf - x0;
  const double fy = yf - y0;
  const int x1 = std::clamp(x0 + 1, 0, w - 1);
  const int y1 = std::clamp(y0 + 1, 0, h - 1);
  x0 = std::clamp(x0, 0, w - 1);
  y0 = std::clamp(y0, 0, h - 1);
  for (int c = 0; c < 3; ++c) {
    const double top = tex.at(x0, y0, c) + fx * (tex.at(x1, y0, c) - tex.at(x0, y0, c));
    const double bot = tex.at(x0, y1, c) + fx * (tex.at(x1, y1, c) - tex.at(x0, y1, c));
    const double val = top + fy * (bot - top);
    rgb[c] = static_cast<uint8_t>(std::clamp(val + 0.5, 0.0, 255.0));
  }
}

}  // namespace gaze4d

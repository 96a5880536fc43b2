#include "gaze4d/render/rasterizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "gaze4d/core/errors.hpp"

namespace gaze4d {

namespace {

constexpr double kNearZ = 0.05;      // near clip plane [m]
constexpr int kSubBits = 16;         // sub-pixel fixed-point bits
constexpr int64_t kSubOne = 1 << kSubBits;
constexpr int64_t kHalfPixel = kSubOne / 2;

// Vertex during clipping: camera-space position + UV.
struct ClipVertex {
  Vec3 p;
  double u, v;
};

// Camera-space half-space n·p >= 0 (near plane folds its offset into d).
struct Plane {
  Vec3 n;
  double d;  // keep if n·p >= d
  double eval(const Vec3& p) const { return n.dot(p) - d; }
};

// Sutherland-Hodgman against one plane; attributes interpolate linearly.
void clip_against(std::vector<ClipVertex>& poly, const Plane& pl,
                  std::vector<ClipVertex>& out) {
  out.clear();
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const ClipVertex& a = poly[i];
    const ClipVertex& b = poly[(i + 1) % n];
    const double da = pl.eval(a.p);
    const double db = pl.eval(b.p);
    if (da >= 0.0) out.push_back(a);
    if ((da >= 0.0) != (db >= 0.0)) {
      const double t = da / (da - db);
      ClipVertex c;
      c.p = a.p + t * (b.p - a.p);
      c.u = a.u + t * (b.u - a.u);
      c.v = a.v + t * (b.v - a.v);
      out.push_back(c);
    }
  }
  poly.swap(out);
}

// Projected vertex: snapped fixed-point pixel coords + depth and UV.
struct ScreenVertex {
  int64_t x, y;  // pixel coords * 2^kSubBits
  double z;      // camera z [m]
  double u, v;
};

int64_t edge(const ScreenVertex& a, const ScreenVertex& b, int64_t px,
             int64_t py) {
  return (b.x - a.x) * (py - a.y) - (b.y - a.y) * (px - a.x);
}

// Top-left fill rule for clockwise screen winding (y down): horizontal
// top edges point right, left edges point up.
bool top_left(const ScreenVertex& a, const ScreenVertex& b) {
  const int64_t dx = b.x - a.x;
  const int64_t dy = b.y - a.y;
  return dy < 0 || (dy == 0 && dx > 0);
}

// Per-pixel winner key for the deterministic depth tie-break.
struct Winner {
  uint8_t iid = 0;
  uint32_t tri = 0;
};

struct Target {
  RenderOutput* out;
  std::vector<Winner>* winners;
  bool color_only;
};

void raster_triangle(const ScreenVertex& sv0, const ScreenVertex& sv1,
                     const ScreenVertex& sv2, const SceneInstance& inst,
                     uint32_t tri_index, Target& tgt) {
  const ScreenVertex* v0 = &sv0;
  const ScreenVertex* v1 = &sv1;
  const ScreenVertex* v2 = &sv2;
  int64_t area2 = edge(*v0, *v1, v2->x, v2->y);
  if (area2 == 0) return;
  if (area2 < 0) {  // backface culling off: flip to clockwise
    std::swap(v1, v2);
    area2 = -area2;
  }

  RenderOutput& out = *tgt.out;
  const int w = out.width();
  const int h = out.height();

  const int64_t min_x = std::min({v0->x, v1->x, v2->x});
  const int64_t max_x = std::max({v0->x, v1->x, v2->x});
  const int64_t min_y = std::min({v0->y, v1->y, v2->y});
  const int64_t max_y = std::max({v0->y, v1->y, v2->y});
  // First/last pixel whose center (x*2^16 + half) can be covered.
  int x0 = static_cast<int>((min_x - kHalfPixel + kSubOne - 1) >> kSubBits);
  int x1 = static_cast<int>((max_x - kHalfPixel) >> kSubBits);
  int y0 = static_cast<int>((min_y - kHalfPixel + kSubOne - 1) >> kSubBits);
  int y1 = static_cast<int>((max_y - kHalfPixel) >> kSubBits);
  x0 = std::max(x0, 0);
  y0 = std::max(y0, 0);
  x1 = std::min(x1, w - 1);
  y1 = std::min(y1, h - 1);
  if (x0 > x1 || y0 > y1) return;

  const ScreenVertex* ea[3] = {v0, v1, v2};
  const ScreenVertex* eb[3] = {v1, v2, v0};
  int64_t row_e[3], step_x[3], step_y[3], bias[3];
  const int64_t px0 = (static_cast<int64_t>(x0) << kSubBits) + kHalfPixel;
  const int64_t py0 = (static_cast<int64_t>(y0) << kSubBits) + kHalfPixel;
  for (int i = 0; i < 3; ++i) {
    row_e[i] = edge(*ea[i], *eb[i], px0, py0);
    step_x[i] = -(eb[i]->y - ea[i]->y) * kSubOne;
    step_y[i] = (eb[i]->x - ea[i]->x) * kSubOne;
    bias[i] = top_left(*ea[i], *eb[i]) ? 0 : -1;
  }

  const double inv_area = 1.0 / static_cast<double>(area2);
  const double iz0 = 1.0 / v0->z;
  const double iz1 = 1.0 / v1->z;
  const double iz2 = 1.0 / v2->z;
  const double uz0 = v0->u * iz0, uz1 = v1->u * iz1, uz2 = v2->u * iz2;
  const double vz0 = v0->v * iz0, vz1 = v1->v * iz1, vz2 = v2->v * iz2;

  std::vector<Winner>& winners = *tgt.winners;
  const TexturedMesh& mesh = *inst.mesh;

  for (int y = y0; y <= y1; ++y) {
    int64_t e0 = row_e[0], e1 = row_e[1], e2 = row_e[2];
    for (int x = x0; x <= x1; ++x) {
      if ((e0 + bias[0]) >= 0 && (e1 + bias[1]) >= 0 && (e2 + bias[2]) >= 0) {
        // Barycentric weights are the opposite-edge functions.
        const double l0 = static_cast<double>(e1) * inv_area;
        const double l1 = static_cast<double>(e2) * inv_area;
        const double l2 = static_cast<double>(e0) * inv_area;
        const double inv_z = l0 * iz0 + l1 * iz1 + l2 * iz2;
        const float zf = static_cast<float>(1.0 / inv_z);
        const float cur = tgt.out->depth.at(x, y);
        Winner& win = winners[static_cast<size_t>(y) * w + x];
        const bool wins =
            zf < cur ||
            (zf == cur && (inst.instance_id < win.iid ||
                           (inst.instance_id == win.iid && tri_index < win.tri)));
        if (wins) {
          const double uu = (l0 * uz0 + l1 * uz1 + l2 * uz2) / inv_z;
          const double vv = (l0 * vz0 + l1 * vz1 + l2 * vz2) / inv_z;
          out.depth.at(x, y) = zf;
          win.iid = inst.instance_id;
          win.tri = tri_index;
          uint8_t rgb[3];
          sample_texture_bilinear(mesh.texture, static_cast<float>(uu),
                                  static_cast<float>(vv), rgb);
          out.color.at(x, y, 0) = rgb[0];
          out.color.at(x, y, 1) = rgb[1];
          out.color.at(x, y, 2) = rgb[2];
          if (!tgt.color_only) {
            const auto [tx, ty] =
                uv_to_texel(static_cast<float>(uu), static_cast<float>(vv),
                            inst.id_texture.width, inst.id_texture.height);
            out.surface_id.at(x, y) = inst.id_texture.value_at(tx, ty);
            out.instance_mask.at(x, y) = inst.instance_id;
            out.triangle_index.at(x, y) = tri_index;
          }
        }
      }
      e0 += step_x[0];
      e1 += step_x[1];
      e2 += step_x[2];
    }
    row_e[0] += step_y[0];
    row_e[1] += step_y[1];
    row_e[2] += step_y[2];
  }
}

void render_instance(const SceneInstance& inst, const Pose& T_cam_world,
                     const CameraIntrinsics& K, Target& tgt) {
  inst.validate();
  const Pose T_cam_inst = T_cam_world * inst.pose;
  const Eigen::Matrix3d R = T_cam_inst.rotation_matrix();
  const Vec3 t = T_cam_inst.translation();

  // Near plane plus a guard band ~4 viewports wide: keeps snapped
  // fixed-point coordinates well inside int64 edge-function range.
  const double margin = 4.0 * std::max(K.width, K.height);
  const Plane planes[5] = {
      {Vec3(0, 0, 1), kNearZ},
      {Vec3(K.fx, 0, K.cx + margin), 0.0},
      {Vec3(-K.fx, 0, K.width + margin - K.cx), 0.0},
      {Vec3(0, K.fy, K.cy + margin), 0.0},
      {Vec3(0, -K.fy, K.height + margin - K.cy), 0.0},
  };

  const TexturedMesh& mesh = *inst.mesh;
  std::vector<ClipVertex> poly, scratch;
  std::vector<ScreenVertex> screen;
  for (size_t ti = 0; ti < mesh.triangles.size(); ++ti) {
    const auto& tri = mesh.triangles[ti];
    poly.clear();
    for (int k = 0; k < 3; ++k) {
      ClipVertex cv;
      cv.p = R * mesh.vertices[tri[k]].cast<double>() + t;
      cv.u = mesh.uv[tri[k]].x();
      cv.v = mesh.uv[tri[k]].y();
      poly.push_back(cv);
    }
    for (const Plane& pl : planes) {
      if (poly.size() < 3) break;
      clip_against(poly, pl, scratch);
    }
    if (poly.size() < 3) continue;

    screen.clear();
    for (const ClipVertex& cv : poly) {
      ScreenVertex sv;
      const double inv_z = 1.0 / cv.p.z();
      sv.x = std::llround((K.fx * cv.p.x() * inv_z + K.cx) * kSubOne);
      sv.y = std::llround((K.fy * cv.p.y() * inv_z + K.cy) * kSubOne);
      sv.z = cv.p.z();
      sv.u = cv.u;
      sv.v = cv.v;
      screen.push_back(sv);
    }
    for (size_t k = 1; k + 1 < screen.size(); ++k) {
      raster_triangle(screen[0], screen[k], screen[k + 1], inst,
                      static_cast<uint32_t>(ti), tgt);
    }
  }
}

RenderOutput render_impl(const std::vector<SceneInstance>& instances,
                         const Pose& T_world_cam, const CameraIntrinsics& K,
                         bool color_only) {
  K.validate();
  RenderOutput out;
  out.color = RgbImage(K.width, K.height, 0);
  out.depth = DepthImage(K.width, K.height, kDepthSentinel);
  out.camera_pose = T_world_cam;
  out.intrinsics = K;
  if (!color_only) {
    out.surface_id = IdImage(K.width, K.height, kIdSentinel);
    out.instance_mask = MaskImage(K.width, K.height, 0);
    out.triangle_index = IdImage(K.width, K.height, kIdSentinel);
    for (const SceneInstance& inst : instances)
      out.instances[inst.instance_id] = {inst.category, inst.id_texture};
  }

  std::vector<Winner> winners(static_cast<size_t>(K.width) * K.height);
  Target tgt{&out, &winners, color_only};
  const Pose T_cam_world = T_world_cam.inverse();
  for (const SceneInstance& inst : instances)
    render_instance(inst, T_cam_world, K, tgt);
  return out;
}

}  // namespace

RenderOutput render(const std::vector<SceneInstance>& instances,
                    const Pose& T_world_cam, const CameraIntrinsics& K) {
  return render_impl(instances, T_world_cam, K, false);
}

RgbImage render_keyframe(const SceneInstance& map_instance, const Pose& T,
                         const CameraIntrinsics& K) {
  return render_impl({map_instance}, T, K, true).color;
}

SurfaceHit lookup(const RenderOutput& out, int px, int py) {
  if (!out.color.in_bounds(px, py))
    throw GeometryError("lookup pixel out of bounds");
  SurfaceHit hit;
  const uint32_t id = out.surface_id.at(px, py);
  if (id == kIdSentinel) return hit;  // background: valid = false

  hit.valid = true;
  hit.instance_id = out.instance_mask.at(px, py);
  const auto it = out.instances.find(hit.instance_id);
  if (it == out.instances.end())
    throw GeometryError("surface hit references unknown instance");
  hit.category = it->second.category;
  hit.texel_id = id;
  std::tie(hit.texel_x, hit.texel_y) = it->second.id_texture.texel_of(id);
  hit.depth = out.depth.at(px, py);
  const Vec3 p_cam =
      unproject(out.intrinsics, Vec2(px + 0.5, py + 0.5), hit.depth);
  hit.world_point = out.camera_pose * p_cam;
  return hit;
}

}  // namespace gaze4d

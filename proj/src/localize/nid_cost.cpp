#include "gaze4d/localize/nid_cost.hpp"

#include <cmath>

#include "gaze4d/core/errors.hpp"
#include "gaze4d/render/rasterizer.hpp"

namespace gaze4d {

namespace {

constexpr double kMinZ = 0.05;       // matches the renderer near plane
constexpr double kBorderBand = 3.0;  // apodization band width [px]

// Smoothstep border window over the bilinear-valid domain [0, n]:
// 0 at the ends, 1 beyond the 3 px band, C¹ everywhere.
inline double window(double x, double n) {
  double s;
  if (x <= 0.0 || x >= n) return 0.0;
  if (x < kBorderBand)
    s = x / kBorderBand;
  else if (x > n - kBorderBand)
    s = (n - x) / kBorderBand;
  else
    return 1.0;
  return s * s * (3.0 - 2.0 * s);
}

inline double window_deriv(double x, double n) {
  double s, dsdx;
  if (x <= 0.0 || x >= n) return 0.0;
  if (x < kBorderBand) {
    s = x / kBorderBand;
    dsdx = 1.0 / kBorderBand;
  } else if (x > n - kBorderBand) {
    s = (n - x) / kBorderBand;
    dsdx = -1.0 / kBorderBand;
  } else {
    return 0.0;
  }
  return 6.0 * s * (1.0 - s) * dsdx;
}

// Cubic B-spline smoothing sample (4x4 taps, clamp-to-edge) with the exact
// derivative. C² across cell boundaries, so finite differences of the cost
// converge to the analytic gradient; bilinear kinks do not. The positive
// partition-of-unity kernel keeps the result inside the tap value range.
inline void bspline_grad(const GrayImage& img, double x, double y,
                         double* val, double* gx, double* gy) {
  const int x1 = static_cast<int>(x);
  const int y1 = static_cast<int>(y);
  const int w = img.width(), h = img.height();
  double wx[4], dwx[4], wy[4], dwy[4];
  int cx[4], cy[4];
  for (int i = 0; i < 4; ++i) {
    const int tx = x1 - 1 + i;
    const int ty = y1 - 1 + i;
    wx[i] = bspline3(x - tx);
    dwx[i] = bspline3_deriv(x - tx);
    wy[i] = bspline3(y - ty);
    dwy[i] = bspline3_deriv(y - ty);
    cx[i] = tx < 0 ? 0 : (tx > w - 1 ? w - 1 : tx);
    cy[i] = ty < 0 ? 0 : (ty > h - 1 ? h - 1 : ty);
  }
  double v = 0.0, dx = 0.0, dy = 0.0;
  for (int j = 0; j < 4; ++j) {
    const float* row = img.row(cy[j]);
    double r = 0.0, rd = 0.0;
    for (int i = 0; i < 4; ++i) {
      const double f = row[cx[i]];
      r += wx[i] * f;
      rd += dwx[i] * f;
    }
    v += wy[j] * r;
    dx += wy[j] * rd;
    dy += dwy[j] * r;
  }
  *val = v;
  *gx = dx;
  *gy = dy;
}

}  // namespace

NidCost::NidCost(const GrayImage& key_lum, const DepthImage& key_depth,
                 const GrayImage& live_lum, const CameraIntrinsics& K,
                 int stride)
    : live_(live_lum), K_(K) {
  if (key_lum.width() != key_depth.width() ||
      key_lum.height() != key_depth.height())
    throw GeometryError("keyframe luminance/depth dimensions differ");
  if (live_lum.width() != K.width || live_lum.height() != K.height)
    throw GeometryError("live image does not match intrinsics");
  if (stride < 1) stride = 1;
  // Match the live-side B-spline smoothing on the keyframe: at integer
  // offsets the kernel reduces to a separable [1/6, 2/3, 1/6] filter.
  // Symmetric smoothing keeps the cost optimum at exact alignment.
  const int w = key_lum.width(), h = key_lum.height();
  GrayImage tmp(w, h), key_smooth(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int xm = x > 0 ? x - 1 : 0, xp = x < w - 1 ? x + 1 : w - 1;
      tmp.at(x, y) = (key_lum.at(xm, y) + key_lum.at(xp, y) +
                      4.0f * key_lum.at(x, y)) /
                     6.0f;
    }
  }
  for (int y = 0; y < h; ++y) {
    const int ym = y > 0 ? y - 1 : 0, yp = y < h - 1 ? y + 1 : h - 1;
    for (int x = 0; x < w; ++x)
      key_smooth.at(x, y) =
          (tmp.at(x, ym) + tmp.at(x, yp) + 4.0f * tmp.at(x, y)) / 6.0f;
  }
  for (int y = 0; y < h; y += stride) {
    for (int x = 0; x < w; x += stride) {
      const float d = key_depth.at(x, y);
      if (!std::isfinite(d)) continue;
      KeyPixel kp;
      kp.X = unproject(K, Vec2(x + 0.5, y + 0.5), d);
      kp.lum = key_smooth.at(x, y);
      kp.bins = soft_bins(kp.lum, kNidBins);
      key_pixels_.push_back(kp);
    }
  }
}

void NidCost::ensure_warp(const Pose& T_key_live) const {
  const Mat4 tag = T_key_live.matrix();
  if (warp_valid_ && tag == warp_tag_) return;
  warp_.clear();
  hist_valid_ = false;
  const Pose T_live_key = T_key_live.inverse();
  const Mat3 R = T_live_key.rotation_matrix();
  const Vec3 t = T_live_key.translation();
  const double nx = live_.width() - 1.0;
  const double ny = live_.height() - 1.0;

  for (uint32_t k = 0; k < key_pixels_.size(); ++k) {
    const KeyPixel& kp = key_pixels_[k];
    const Vec3 Y = R * kp.X + t;
    if (Y.z() < kMinZ) continue;
    const double inv_z = 1.0 / Y.z();
    WarpRecord r;
    r.idx = k;
    r.Y = Y;
    r.qx = K_.fx * Y.x() * inv_z + K_.cx;
    r.qy = K_.fy * Y.y() * inv_z + K_.cy;
    r.wx = window(r.qx, nx);
    r.wy = window(r.qy, ny);
    if (r.wx * r.wy <= 0.0) continue;
    bspline_grad(live_, r.qx, r.qy, &r.lum, &r.gx, &r.gy);
    r.bins = soft_bins(r.lum, kNidBins);
    warp_.push_back(r);
  }
  warp_tag_ = tag;
  warp_valid_ = true;
}

HistogramPair NidCost::accumulate(const Pose& T_key_live) const {
  ensure_warp(T_key_live);
  if (hist_valid_) return hist_;
  HistogramPair h(kNidBins);
  for (const WarpRecord& r : warp_) {
    const double om = r.wx * r.wy;
    const SoftBins& kb = key_pixels_[r.idx].bins;
    for (int i = 0; i < 4; ++i) {
      const double wa = om * kb.w[i];
      h.marginal_a(kb.i0 + i) += wa;
      for (int j = 0; j < 4; ++j)
        h.joint(kb.i0 + i, r.bins.i0 + j) += wa * r.bins.w[j];
    }
    for (int j = 0; j < 4; ++j) h.marginal_b(r.bins.i0 + j) += om * r.bins.w[j];
    h.total += om;
  }
  hist_ = h;
  hist_valid_ = true;
  return h;
}

NidCost::Eval NidCost::value(const Pose& T_key_live) const {
  const HistogramPair h = accumulate(T_key_live);
  Eval e;
  e.nid = nid_from_histogram(h);  // throws on zero total
  e.overlap = h.total / static_cast<double>(key_pixels_.size());
  return e;
}

NidCost::Eval NidCost::value_hard(const Pose& T_key_live) const {
  ensure_warp(T_key_live);
  HistogramPair h(kNidBins);
  for (const WarpRecord& r : warp_)
    h.add_hard(key_pixels_[r.idx].lum, static_cast<float>(r.lum),
               r.wx * r.wy);
  Eval e;
  e.nid = nid_from_histogram(h);
  e.overlap = h.total / static_cast<double>(key_pixels_.size());
  return e;
}

NidCost::Eval NidCost::value_and_gradient(const Pose& T_key_live,
                                          Twist& grad) const {
  grad.setZero();
  const HistogramPair h = accumulate(T_key_live);
  Eval e;
  e.nid = nid_from_histogram(h);
  e.overlap = h.total / static_cast<double>(key_pixels_.size());
  if (e.nid.degenerate) return e;

  // dNID/dp for every occupied joint bin, and D = sum c * p.
  const int B = kNidBins;
  const double W = h.total;
  const double hj = e.nid.joint_entropy;
  double ha = 0.0, hb = 0.0;
  for (int i = 0; i < B; ++i) {
    if (h.marginal_a(i) > 0.0) {
      const double q = h.marginal_a(i) / W;
      ha -= q * std::log(q);
    }
    if (h.marginal_b(i) > 0.0) {
      const double q = h.marginal_b(i) / W;
      hb -= q * std::log(q);
    }
  }
  const double num = 2.0 * hj - ha - hb;  // = H - I
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(B, B);
  double D = 0.0;
  for (int i = 0; i < B; ++i) {
    for (int j = 0; j < B; ++j) {
      const double pj = h.joint(i, j) / W;
      if (pj <= 0.0) continue;
      const double la = std::log(h.marginal_a(i) / W);
      const double lb = std::log(h.marginal_b(j) / W);
      const double lj = std::log(pj);
      c(i, j) = ((-2.0 * lj + la + lb) * hj + num * (1.0 + lj)) / (hj * hj);
      D += c(i, j) * pj;
    }
  }

  // Second pass over the cached warp: chain rule through live sampling,
  // apodization and the projective/SE(3) Jacobians, for a right-multiplied
  // increment on T.
  const double nx = live_.width() - 1.0;
  const double ny = live_.height() - 1.0;
  const double s_bin = bin_scale(B);

  for (const WarpRecord& r : warp_) {
    const double om = r.wx * r.wy;
    const SoftBins td = soft_bins_deriv(r.lum, kNidBins);
    const SoftBins& kb = key_pixels_[r.idx].bins;

    double gamma = 0.0;   // sum c * beta_key * beta_live
    double alpha = 0.0;   // sum c * beta_key * beta_live'
    for (int i = 0; i < 4; ++i) {
      const double bk = kb.w[i];
      if (bk == 0.0) continue;
      const double* crow = c.data() + (kb.i0 + i);  // column-major
      for (int j = 0; j < 4; ++j) {
        const double cij = crow[static_cast<size_t>(r.bins.i0 + j) * B];
        gamma += cij * bk * r.bins.w[j];
        alpha += cij * bk * td.w[j];
      }
    }

    // d(value)/dq: intensity term + window term.
    const double au = om * alpha * s_bin;
    const double go = gamma - D;
    const Eigen::Vector2d g2(au * r.gx + go * window_deriv(r.qx, nx) * r.wy,
                             au * r.gy + go * r.wx * window_deriv(r.qy, ny));
    // dq/dY.
    const double inv_z = 1.0 / r.Y.z();
    const Vec3 g3(K_.fx * inv_z * g2.x(), K_.fy * inv_z * g2.y(),
                  -(K_.fx * r.Y.x() * g2.x() + K_.fy * r.Y.y() * g2.y()) *
                      inv_z * inv_z);
    // dY/dxi = [[Y]x, -I] for Y = exp(-xi) T⁻¹ X.
    grad.head<3>() += g3.cross(r.Y);
    grad.tail<3>() += -g3;
  }
  grad /= W;
  return e;
}

Twist nid_gradient(const RgbImage& live, const Pose& key_pose,
                   const SceneInstance& map, const CameraIntrinsics& K,
                   const Pose& T_key_live) {
  const RenderOutput key = render({map}, key_pose, K);
  const GrayImage key_lum = to_luminance(key.color);
  const GrayImage live_lum = to_luminance(live);
  NidCost cost(key_lum, key.depth, live_lum, K);
  Twist g;
  cost.value_and_gradient(T_key_live, g);
  return g;
}

}  // namespace gaze4d

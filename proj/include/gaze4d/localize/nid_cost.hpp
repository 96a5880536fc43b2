#pragma once

#include <vector>

#include "gaze4d/core/camera.hpp"
#include "gaze4d/core/image.hpp"
#include "gaze4d/localize/histogram.hpp"
#include "gaze4d/render/scene.hpp"

namespace gaze4d {

// Pose-dependent NID between a rendered keyframe (luminance + depth) and a
// live luminance image, both under intrinsics K.
//
// Keyframe pixels with valid depth are lifted to fixed keyframe-camera
// points X. At relative pose T (= T_key_live, live camera expressed in the
// keyframe frame) each X warps into the live image at q = project(K, T⁻¹X)
// and contributes the co-occurrence (key luminance, live luminance at q),
// soft-binned with cubic B-spline kernels.
//
// Contributions are weighted by a C¹ apodization window that fades to zero
// over a 3 px band at the live image border, so the NID value is smooth in
// the pose even as pixels enter and leave the overlap; the analytic
// gradient includes the window term.
class NidCost {
public:
  // stride subsamples keyframe pixels in x and y (>= 1).
  NidCost(const GrayImage& key_lum, const DepthImage& key_depth,
          const GrayImage& live_lum, const CameraIntrinsics& K,
          int stride = 1);

  struct Eval {
    NidValue nid;
    double overlap = 0.0;  // apodized weight per candidate keyframe pixel
  };

  // NID at T. Throws InsufficientOverlapError when no keyframe pixel lands
  // in the live image.
  Eval value(const Pose& T_key_live) const;

  // NID and its analytic gradient w.r.t. a right-multiplied twist on T
  // (nats per unit twist). Degenerate (zero-entropy) overlap yields a zero
  // gradient.
  Eval value_and_gradient(const Pose& T_key_live, Twist& grad) const;

  // Exact-binned NID over the same warped overlap: the tracking-quality
  // metric (near 0 at alignment, approaching 1 when decorrelated). The
  // soft-binned value() has a kernel-dependent floor and is only meaningful
  // relatively, as the optimization objective.
  Eval value_hard(const Pose& T_key_live) const;

  size_t key_pixel_count() const { return key_pixels_.size(); }

private:
  struct KeyPixel {
    Vec3 X;         // keyframe-camera point [m]
    float lum = 0;  // keyframe luminance
    SoftBins bins;  // soft binning of the keyframe luminance
  };

  // Warped state of one visible keyframe pixel, cached per pose so the
  // value, gradient and quality passes warp each pose exactly once.
  struct WarpRecord {
    uint32_t idx;              // index into key_pixels_
    Vec3 Y;                    // live-camera point
    double qx, qy;             // live image coordinates
    double wx, wy;             // per-axis apodization
    double lum, gx, gy;        // bilinear live sample and in-cell gradient
    SoftBins bins;             // soft binning of the live sample
  };

  void ensure_warp(const Pose& T_key_live) const;
  HistogramPair accumulate(const Pose& T_key_live) const;

  std::vector<KeyPixel> key_pixels_;
  const GrayImage& live_;
  CameraIntrinsics K_;

  mutable std::vector<WarpRecord> warp_;
  mutable Mat4 warp_tag_;
  mutable bool warp_valid_ = false;
  mutable HistogramPair hist_{kNidBins};
  mutable bool hist_valid_ = false;
};

// Analytic NID gradient of a live image against a keyframe rendered from
// the map at key_pose, evaluated at relative pose T_key_live.
Twist nid_gradient(const RgbImage& live, const Pose& key_pose,
                   const SceneInstance& map, const CameraIntrinsics& K,
                   const Pose& T_key_live = Pose::identity());

}  // namespace gaze4d

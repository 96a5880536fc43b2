#pragma once

#include <vector>

#include "gaze4d/localize/nid_cost.hpp"
#include "gaze4d/render/scene.hpp"

namespace gaze4d {

struct TrackerConfig {
  int pyramid_levels = 3;
  int max_iterations = 50;  // per pyramid level
  double step_tol = 1e-5;   // twist step norm convergence threshold
  double armijo_c1 = 1e-4;
  int max_backtracks = 24;
  double min_overlap = 0.10;        // tracking lost below this fraction
  double rekey_translation = 0.3;   // [m]
  double rekey_rotation_deg = 8.0;
  double rekey_nid = 0.7;
  int pixel_stride = 1;  // finest-level keyframe pixel subsampling
};

// One image-pyramid level of a keyframe (or, without depth, a live frame).
struct PyramidLevel {
  GrayImage lum;
  DepthImage depth;
  CameraIntrinsics K;
};

// Levels fine to coarse; level 0 is full resolution. Pass depth = nullptr
// for live frames.
std::vector<PyramidLevel> build_pyramid(const RgbImage& color,
                                        const DepthImage* depth,
                                        const CameraIntrinsics& K,
                                        int levels);

struct TrackResult {
  Pose T_key_live;  // live camera pose in the keyframe camera frame
  bool converged = false;
  NidValue nid;       // exact-binned NID at the solution (quality metric)
  double final_cost = 0.0;  // soft-binned objective at the solution
  int iterations = 0;
  // (pyramid level, objective after the accepted step), coarse to fine;
  // monotonically non-increasing within each level.
  std::vector<std::pair<int, double>> accepted_costs;
};

// Stateful tracking context: current keyframe pyramid, world pose estimate,
// and the persisted BFGS inverse-Hessian approximation (kept symmetric
// positive definite; reset to identity on curvature violations and rekeys).
struct TrackerState {
  TrackerConfig config;

  std::vector<PyramidLevel> keyframe;
  Pose T_world_key;
  bool has_keyframe = false;

  Pose T_world_live;
  Eigen::Matrix<double, 6, 6> inv_hessian =
      Eigen::Matrix<double, 6, 6>::Identity();

  TrackResult last;
  bool has_track = false;
  bool last_rekeyed = false;
};

// Installs a rendered keyframe (color + depth) as the tracking reference.
void set_keyframe(TrackerState& state, const RenderOutput& key_render);

// Estimates the relative pose keyframe -> live by BFGS minimization of the
// soft-binned NID over a coarse-to-fine pyramid, starting from the supplied
// world-pose guess. Updates state.T_world_live. Throws TrackingLostError on
// lost overlap or zero-entropy (blank) input.
TrackResult track(const RgbImage& live, TrackerState& state,
                  const CameraIntrinsics& K, const Pose& T_world_guess);

// True when the last tracked relative motion or NID exceeds the keyframe
// refresh thresholds.
bool should_rekey(const TrackerState& state);

// Full localization step: ensures a keyframe exists (rendering one from the
// map at the guess if needed), tracks, composes the world pose, and
// re-renders the keyframe at the new estimate when should_rekey fires.
Pose localize(const RgbImage& live, TrackerState& state,
              const SceneInstance& map, const CameraIntrinsics& K,
              const Pose& T_world_guess);

}  // namespace gaze4d

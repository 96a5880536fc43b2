#include "gaze4d/localize/tracker.hpp"

#include <cmath>
#include <limits>

#include "gaze4d/core/errors.hpp"
#include "gaze4d/render/rasterizer.hpp"

namespace gaze4d {

std::vector<PyramidLevel> build_pyramid(const RgbImage& color,
                                        const DepthImage* depth,
                                        const CameraIntrinsics& K,
                                        int levels) {
  if (levels < 1) throw ConfigError("pyramid needs at least one level");
  std::vector<PyramidLevel> pyr(levels);
  pyr[0].lum = to_luminance(color);
  if (depth) pyr[0].depth = *depth;
  pyr[0].K = K;
  for (int l = 1; l < levels; ++l) {
    pyr[l].lum = downsample_half(pyr[l - 1].lum);
    if (depth) pyr[l].depth = downsample_half_depth(pyr[l - 1].depth);
    pyr[l].K = pyr[l - 1].K.half();
    if (pyr[l].K.width < 16 || pyr[l].K.height < 16)
      throw ConfigError("pyramid level smaller than 16 px");
  }
  return pyr;
}

void set_keyframe(TrackerState& state, const RenderOutput& key_render) {
  state.keyframe = build_pyramid(key_render.color, &key_render.depth,
                                 key_render.intrinsics,
                                 state.config.pyramid_levels);
  state.T_world_key = key_render.camera_pose;
  state.has_keyframe = true;
  state.inv_hessian.setIdentity();
}

namespace {

using Mat6 = Eigen::Matrix<double, 6, 6>;

constexpr double kMaxFirstStep = 0.05;  // twist-norm cap on a level's first trial

struct LevelOutcome {
  Pose T;
  NidValue nid;
  int iterations = 0;
  bool step_converged = false;
  double grad_norm = 0.0;
  std::vector<double> accepted_costs;
};

// Line-search candidates may warp the overlap entirely off the image or
// onto a blank region; both read as "infinitely bad", never as converged.
double candidate_cost(const NidCost& cost, const Pose& T) {
  try {
    const NidCost::Eval e = cost.value(T);
    if (e.nid.degenerate) return std::numeric_limits<double>::infinity();
    return e.nid.nid;
  } catch (const InsufficientOverlapError&) {
    return std::numeric_limits<double>::infinity();
  }
}

// BFGS with Armijo backtracking on one pyramid level. Coarse levels only
// refine to their own pixel scale, so their step tolerance is relaxed.
LevelOutcome minimize_level(const NidCost& cost, Pose T, Mat6& inv_hessian,
                            const TrackerConfig& cfg, double step_tol) {
  LevelOutcome out;
  Twist g;
  NidCost::Eval e = cost.value_and_gradient(T, g);
  if (e.nid.degenerate)
    throw TrackingLostError("zero-entropy overlap (blank input)");
  if (e.overlap < cfg.min_overlap)
    throw TrackingLostError("keyframe overlap lost");
  double f = e.nid.nid;

  for (int it = 0; it < cfg.max_iterations; ++it) {
    Twist d = -(inv_hessian * g);
    double gd = g.dot(d);
    if (!(gd < 0.0)) {  // not a descent direction: reset
      inv_hessian.setIdentity();
      d = -g;
      gd = g.dot(d);
      if (!(gd < 0.0)) break;  // zero gradient
    }
    // The raw gradient can be steep in NID-per-radian terms; keep the first
    // trial step of a level inside a sane pose range.
    if (it == 0 && d.norm() > kMaxFirstStep) {
      d *= kMaxFirstStep / d.norm();
      gd = g.dot(d);
    }

    double alpha = 1.0;
    double f_new = f;
    bool accepted = false;
    for (int bt = 0; bt < cfg.max_backtracks; ++bt) {
      const Pose T_try = T * Pose::exp(alpha * d);
      f_new = candidate_cost(cost, T_try);
      if (f_new <= f + cfg.armijo_c1 * alpha * gd) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;  // cannot decrease along d: at a minimum

    const Twist s = alpha * d;
    T = T * Pose::exp(s);
    ++out.iterations;
    out.accepted_costs.push_back(f_new);

    Twist g_new;
    e = cost.value_and_gradient(T, g_new);
    if (e.nid.degenerate)
      throw TrackingLostError("zero-entropy overlap (blank input)");
    if (e.overlap < cfg.min_overlap)
      throw TrackingLostError("keyframe overlap lost");
    f = e.nid.nid;

    const Twist y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-12) {
      const double rho = 1.0 / sy;
      const Mat6 I = Mat6::Identity();
      const Mat6 V = I - rho * s * y.transpose();
      inv_hessian = V * inv_hessian * V.transpose() + rho * s * s.transpose();
      inv_hessian = 0.5 * (inv_hessian + inv_hessian.transpose());
    } else {
      inv_hessian.setIdentity();
    }
    g = g_new;

    if (s.norm() < step_tol) {
      out.step_converged = true;
      break;
    }
  }

  out.T = T;
  out.nid = e.nid;
  out.grad_norm = g.norm();
  return out;
}

}  // namespace

TrackResult track(const RgbImage& live, TrackerState& state,
                  const CameraIntrinsics& K, const Pose& T_world_guess) {
  if (!state.has_keyframe)
    throw ConfigError("tracker has no keyframe installed");
  if (live.width() != K.width || live.height() != K.height)
    throw GeometryError("live image does not match intrinsics");

  const std::vector<PyramidLevel> live_pyr =
      build_pyramid(live, nullptr, K, state.config.pyramid_levels);

  TrackResult res;
  res.T_key_live = state.T_world_key.inverse() * T_world_guess;

  try {
    LevelOutcome out;
    for (int l = state.config.pyramid_levels - 1; l >= 0; --l) {
      const PyramidLevel& key = state.keyframe[l];
      const int stride = l == 0 ? state.config.pixel_stride : 1;
      const NidCost cost(key.lum, key.depth, live_pyr[l].lum, key.K, stride);
      state.inv_hessian.setIdentity();
      out = minimize_level(cost, res.T_key_live, state.inv_hessian,
                           state.config, state.config.step_tol * (1 << l));
      res.T_key_live = out.T;
      res.iterations += out.iterations;
      for (double c : out.accepted_costs) res.accepted_costs.emplace_back(l, c);
      if (l == 0) res.nid = cost.value_hard(res.T_key_live).nid;
    }
    res.final_cost = out.nid.nid;
    res.converged = out.step_converged || out.grad_norm < 1e-3;
  } catch (const InsufficientOverlapError& e) {
    throw TrackingLostError(std::string("tracking lost: ") + e.what());
  }

  state.T_world_live = state.T_world_key * res.T_key_live;
  state.last = res;
  state.has_track = true;
  return res;
}

bool should_rekey(const TrackerState& state) {
  if (!state.has_track) return false;
  const Pose& rel = state.last.T_key_live;
  const double rot_deg = rel.rotation_angle() * 180.0 / M_PI;
  return rel.translation().norm() > state.config.rekey_translation ||
         rot_deg > state.config.rekey_rotation_deg ||
         state.last.nid.nid > state.config.rekey_nid;
}

Pose localize(const RgbImage& live, TrackerState& state,
              const SceneInstance& map, const CameraIntrinsics& K,
              const Pose& T_world_guess) {
  if (!state.has_keyframe)
    set_keyframe(state, render({map}, T_world_guess, K));

  track(live, state, K, T_world_guess);

  state.last_rekeyed = should_rekey(state);
  if (state.last_rekeyed)
    set_keyframe(state, render({map}, state.T_world_live, K));
  return state.T_world_live;
}

}  // namespace gaze4d

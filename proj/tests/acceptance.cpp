// Acceptance battery: one criterion per positional argument (1-9), all when
// no argument. Prints exactly one [PASS]/[FAIL] line per criterion and exits
// with the number of failures. Tolerances are pinned in the checks.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "gaze4d/core/errors.hpp"
#include "gaze4d/eval/metrics.hpp"
#include "gaze4d/fusion/filter.hpp"
#include "gaze4d/gaze/gaze_mapper.hpp"
#include "gaze4d/localize/histogram.hpp"
#include "gaze4d/localize/nid_cost.hpp"
#include "gaze4d/localize/tracker.hpp"
#include "gaze4d/pipeline/report.hpp"
#include "gaze4d/pipeline/runner.hpp"
#include "gaze4d/pipeline/synthetic.hpp"
#include "gaze4d/render/rasterizer.hpp"

namespace fs = std::filesystem;
using namespace gaze4d;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "gaze4d_acceptance" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

RgbImage random_rgb(int w, int h, std::mt19937_64& rng) {
  RgbImage img(w, h);
  std::uniform_int_distribution<int> byte(0, 255);
  for (size_t i = 0; i < img.size(); ++i)
    img.data()[i] = static_cast<uint8_t>(byte(rng));
  return img;
}

// The default synthetic room: 10 x 10 x 3 m box shell with the sinusoid
// texture atlas, camera at mid-height looking along +x.
SceneInstance standard_room(int subdivisions = 1, uint64_t seed = 99) {
  auto mesh = std::make_shared<TexturedMesh>(
      make_box_mesh(Vec3(0, 0, 1.5), Vec3(5, 5, 1.5), subdivisions));
  mesh->texture = make_atlas_texture(512, seed);
  SceneInstance room;
  room.instance_id = 1;
  room.category = Category::kMap;
  room.mesh = mesh;
  room.id_texture = {2048, 2048};
  return room;
}

Pose room_view_pose() {
  return Pose(camera_base_rotation(), Vec3(0, 0, 1.5));
}

Twist random_twist(std::mt19937_64& rng, double max_rot, double max_trans) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vec3 ax(gauss(rng), gauss(rng), gauss(rng));
  Vec3 tx(gauss(rng), gauss(rng), gauss(rng));
  ax.normalize();
  tx.normalize();
  Twist xi;
  xi.head<3>() = ax * (max_rot * unit(rng));
  xi.tail<3>() = tx * (max_trans * unit(rng));
  return xi;
}

struct Criterion {
  bool pass = false;
  std::string detail;
};

// ---------------------------------------------------------------- 1 -------
Criterion criterion_nid_properties() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<int> dim(8, 64);

  double max_sym = 0.0, max_self = 0.0;
  double lo = 1e9, hi = -1e9;
  for (int k = 0; k < 1000; ++k) {
    const int w = dim(rng), h = dim(rng);
    const RgbImage a = random_rgb(w, h, rng);
    const RgbImage b = random_rgb(w, h, rng);
    const double dab = nid(a, b).nid;
    const double dba = nid(b, a).nid;
    max_sym = std::max(max_sym, std::abs(dab - dba));
    lo = std::min({lo, dab, dba});
    hi = std::max({hi, dab, dba});
    max_self = std::max(max_self, nid(a, a).nid);
  }

  int triangle_violations = 0;
  for (int k = 0; k < 500; ++k) {
    const RgbImage a = random_rgb(16, 16, rng);
    const RgbImage b = random_rgb(16, 16, rng);
    const RgbImage c = random_rgb(16, 16, rng);
    const double ab = nid(a, b).nid;
    const double bc = nid(b, c).nid;
    const double ac = nid(a, c).nid;
    if (ac > ab + bc + 1e-12) ++triangle_violations;
  }

  const double dt = seconds_since(t0);
  Criterion r;
  r.pass = max_sym < 1e-12 && lo >= 0.0 && hi <= 1.0 && max_self < 1e-9 &&
           triangle_violations == 0 && dt < 30.0;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "symmetry %.2g, range [%.3f, %.3f], self %.2g, triangle "
                "violations %d/500, %.1f s",
                max_sym, lo, hi, max_self, triangle_violations, dt);
  r.detail = buf;
  return r;
}

// ---------------------------------------------------------------- 2 -------
Criterion criterion_gradient_fd() {
  const auto t0 = Clock::now();
  CameraIntrinsics K{300.0, 300.0, 159.5, 119.5, 320, 240};
  const SceneInstance room = standard_room();
  const Pose key_pose = room_view_pose();
  const RenderOutput key = render({room}, key_pose, K);

  Twist off;
  off << 0.006, -0.004, 0.008, 0.02, -0.015, 0.01;
  const Pose T_true = Pose::exp(off);  // live camera in the keyframe frame
  const RenderOutput live = render({room}, key_pose * T_true, K);

  const GrayImage key_lum = to_luminance(key.color);
  const GrayImage live_lum = to_luminance(live.color);
  const NidCost cost(key_lum, key.depth, live_lum, K);

  std::mt19937_64 rng(2002);
  const double h = 1e-5;
  int ok = 0;
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Pose T = T_true * Pose::exp(random_twist(rng, 0.02, 0.03));
    Twist ga;
    cost.value_and_gradient(T, ga);
    Twist gfd;
    for (int j = 0; j < 6; ++j) {
      Twist e = Twist::Zero();
      e[j] = h;
      const double fp = cost.value(T * Pose::exp(e)).nid.nid;
      const double fm = cost.value(T * Pose::exp(-e)).nid.nid;
      gfd[j] = (fp - fm) / (2.0 * h);
    }
    const double rel = (ga - gfd).norm() / std::max(gfd.norm(), 1e-12);
    if (rel < 1e-4) ++ok;
    worst = std::max(worst, rel);
  }

  const double dt = seconds_since(t0);
  Criterion r;
  r.pass = ok >= 95 && dt < 120.0;
  char buf[192];
  std::snprintf(buf, sizeof(buf), "%d/100 poses < 1e-4 (worst %.2g), %.1f s",
                ok, worst, dt);
  r.detail = buf;
  return r;
}

// ---------------------------------------------------------------- 3 -------
Criterion criterion_relocalization() {
  const auto t0 = Clock::now();
  CameraIntrinsics K{420.0, 420.0, 319.5, 239.5, 640, 480};
  const SceneInstance room = standard_room();
  const Pose G = room_view_pose();
  const RenderOutput key = render({room}, G, K);
  const RgbImage live = key.color;  // ground truth = keyframe pose

  std::mt19937_64 rng(3003);
  const double max_rot = 5.0 * M_PI / 180.0;
  const double max_trans = 0.2;

  int converged = 0, cost_increases = 0, lost = 0;
  double total_iters = 0.0;
  for (int k = 0; k < 200; ++k) {
    TrackerState state;
    state.config.pixel_stride = 2;
    set_keyframe(state, key);
    const Pose guess = G * Pose::exp(random_twist(rng, max_rot, max_trans));
    try {
      const TrackResult res = track(live, state, K, guess);
      total_iters += res.iterations;
      int level = -1;
      double prev = 0.0;
      for (const auto& [l, c] : res.accepted_costs) {
        if (l == level && c > prev + 1e-12) ++cost_increases;
        level = l;
        prev = c;
      }
      const Pose err = G.inverse() * state.T_world_live;
      const double rot_deg = err.rotation_angle() * 180.0 / M_PI;
      const double trans = err.translation().norm();
      if (rot_deg < 0.5 && trans < 0.02) ++converged;
    } catch (const TrackingLostError&) {
      ++lost;
    }
  }

  const double dt = seconds_since(t0);
  Criterion r;
  r.pass = converged >= 180 && cost_increases == 0 && dt < 600.0;
  char buf[224];
  std::snprintf(buf, sizeof(buf),
                "%d/200 converged, %d lost, %d accepted-step increases, mean "
                "%.1f iters, %.0f s",
                converged, lost, cost_increases, total_iters / 200.0, dt);
  r.detail = buf;
  return r;
}

// ---------------------------------------------------------------- 4 -------
struct OracleHit {
  bool valid = false;
  uint8_t instance = 0;
  uint32_t triangle = 0;
  Vec3 point = Vec3::Zero();
  double t = 0.0;
};

// Exhaustive first-hit: Moeller-Trumbore over every triangle of every
// instance, nearest depth wins, ties broken by (instance_id, triangle).
OracleHit raycast_all(const std::vector<SceneInstance>& instances,
                      const Vec3& origin, const Vec3& dir) {
  OracleHit best;
  best.t = std::numeric_limits<double>::infinity();
  for (const SceneInstance& inst : instances) {
    const Mat3 R = inst.pose.rotation_matrix();
    const Vec3 tr = inst.pose.translation();
    const TexturedMesh& mesh = *inst.mesh;
    for (uint32_t f = 0; f < mesh.triangles.size(); ++f) {
      const auto& tri = mesh.triangles[f];
      const Vec3 v0 = R * mesh.vertices[tri[0]].cast<double>() + tr;
      const Vec3 v1 = R * mesh.vertices[tri[1]].cast<double>() + tr;
      const Vec3 v2 = R * mesh.vertices[tri[2]].cast<double>() + tr;
      const Vec3 e1 = v1 - v0, e2 = v2 - v0;
      const Vec3 p = dir.cross(e2);
      const double det = e1.dot(p);
      if (std::abs(det) < 1e-14) continue;
      const double inv = 1.0 / det;
      const Vec3 s = origin - v0;
      const double u = s.dot(p) * inv;
      if (u < 0.0 || u > 1.0) continue;
      const Vec3 q = s.cross(e1);
      const double v = dir.dot(q) * inv;
      if (v < 0.0 || u + v > 1.0) continue;
      const double t = e2.dot(q) * inv;
      if (t <= 1e-9) continue;
      const bool wins =
          t < best.t - 1e-12 ||
          (t < best.t + 1e-12 &&
           (inst.instance_id < best.instance ||
            (inst.instance_id == best.instance && f < best.triangle)));
      if (wins) {
        best.valid = true;
        best.instance = inst.instance_id;
        best.triangle = f;
        best.point = origin + t * dir;
        best.t = t;
      }
    }
  }
  return best;
}

// World point of a covered pixel, decoded from the depth buffer.
bool pixel_world(const RenderOutput& out, int x, int y, Vec3* w) {
  const float z = out.depth.at(x, y);
  if (!std::isfinite(z)) return false;
  *w = out.camera_pose * unproject(out.intrinsics, Vec2(x + 0.5, y + 0.5), z);
  return true;
}

Criterion criterion_gaze_oracle() {
  const auto t0 = Clock::now();
  CameraIntrinsics K{420.0, 420.0, 319.5, 239.5, 640, 480};

  std::vector<SceneInstance> scene;
  scene.push_back(standard_room(2));
  {
    auto mesh = std::make_shared<TexturedMesh>(make_quad_mesh(0.24, 0.24));
    mesh->texture = make_quad_texture(256, 7);
    SceneInstance board;
    board.instance_id = 2;
    board.category = Category::kObject;
    board.mesh = mesh;
    board.pose = Pose(Eigen::AngleAxisd(-M_PI / 2, Vec3::UnitY())
                          .toRotationMatrix(),
                      Vec3(2.0, 0, 1.5));
    board.id_texture = {256, 256};
    scene.push_back(board);
  }
  {
    auto mesh = std::make_shared<TexturedMesh>(
        make_box_mesh(Vec3::Zero(), Vec3(0.09, 0.06, 0.12), 1));
    mesh->texture = make_atlas_texture(64, 8);
    SceneInstance prop;
    prop.instance_id = 3;
    prop.category = Category::kHuman;
    prop.mesh = mesh;
    prop.pose = Pose(Quat::Identity(), Vec3(1.4, -0.5, 1.3));
    prop.id_texture = {256, 256};
    scene.push_back(prop);
  }

  const Pose cam = room_view_pose();
  const RenderOutput out = render(scene, cam, K);
  const Vec3 origin = cam.translation();
  const Mat3 R_wc = cam.rotation_matrix();

  // Pixel excluded when its 3x3 neighbourhood crosses a depth discontinuity
  // or instance boundary (the 1 px guard band around silhouettes).
  auto excluded = [&](int px, int py) {
    const float zc = out.depth.at(px, py);
    const uint8_t ic = out.instance_mask.at(px, py);
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int nx = px + dx, ny = py + dy;
        if (!out.depth.in_bounds(nx, ny)) return true;
        const float zn = out.depth.at(nx, ny);
        if (out.instance_mask.at(nx, ny) != ic) return true;
        if (std::isfinite(zc) != std::isfinite(zn)) return true;
        if (std::isfinite(zc) &&
            std::abs(zn - zc) > 0.05f * std::min(zn, zc))
          return true;
      }
    }
    return false;
  };

  auto footprint = [&](int px, int py) {
    Vec3 c;
    if (!pixel_world(out, px, py, &c)) return 0.0;
    double f = 2.0 * out.depth.at(px, py) / K.fx;  // fallback
    const int nb[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (auto& d : nb) {
      const int nx = px + d[0], ny = py + d[1];
      Vec3 n;
      if (out.depth.in_bounds(nx, ny) &&
          out.instance_mask.at(nx, ny) == out.instance_mask.at(px, py) &&
          pixel_world(out, nx, ny, &n))
        f = std::max(f, (n - c).norm());
    }
    return f;
  };

  // Sample mix: mostly uniform, plus clusters around the two small
  // instances so their silhouettes and interiors are exercised.
  std::mt19937_64 rng(4004);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss;
  const Vec2 board_px = project(K, cam.inverse() * Vec3(2.0, 0, 1.5));
  const Vec2 prop_px = project(K, cam.inverse() * Vec3(1.4, -0.5, 1.3));

  int considered = 0, agree = 0, excluded_n = 0, fp_fail = 0;
  for (int k = 0; k < 10000; ++k) {
    double u, v;
    const double pick = unit(rng);
    if (pick < 0.7) {
      u = unit(rng);
      v = unit(rng);
    } else {
      const Vec2& c = pick < 0.85 ? board_px : prop_px;
      const double spread = pick < 0.85 ? 40.0 : 60.0;
      u = (c.x() + spread * gauss(rng)) / K.width;
      v = (c.y() + spread * gauss(rng)) / K.height;
      u = std::clamp(u, 0.0, 0.999999);
      v = std::clamp(v, 0.0, 0.999999);
    }
    const int px = std::min(K.width - 1, static_cast<int>(u * K.width));
    const int py = std::min(K.height - 1, static_cast<int>(v * K.height));
    if (excluded(px, py)) {
      ++excluded_n;
      continue;
    }
    ++considered;

    GazeSample s;
    s.t = k;
    s.u = u;
    s.v = v;
    const auto hit = map_gaze(out, s);

    const Vec3 dir =
        (R_wc * unproject(K, Vec2(px + 0.5, py + 0.5), 1.0)).normalized();
    const OracleHit oracle = raycast_all(scene, origin, dir);

    if (!hit.has_value() || !oracle.valid) {
      if (!hit.has_value() && !oracle.valid) ++agree;
      continue;
    }
    const uint32_t tri = out.triangle_index.at(px, py);
    if (hit->instance_id == oracle.instance && tri == oracle.triangle) {
      ++agree;
      if ((hit->world_point - oracle.point).norm() >
          1.5 * footprint(px, py))
        ++fp_fail;
    }
  }

  const double agreement =
      considered > 0 ? 100.0 * agree / considered : 0.0;
  const double dt = seconds_since(t0);
  Criterion r;
  r.pass = agreement >= 99.9 && fp_fail == 0 && dt < 300.0;
  char buf[224];
  std::snprintf(buf, sizeof(buf),
                "agreement %.3f%% (%d/%d, %d excluded), %d footprint "
                "violations, %.0f s",
                agreement, agree, considered, excluded_n, fp_fail, dt);
  r.detail = buf;
  return r;
}

// ---------------------------------------------------------------- 5 -------
Criterion criterion_bias_precision() {
  const auto t0 = Clock::now();
  const fs::path base = scratch_dir("bias");
  const double distances[4] = {1.0, 1.5, 2.0, 2.5};

  std::vector<double> ape_means, ate_rmses, analytic;
  std::string fail;
  for (int i = 0; i < 4 && fail.empty(); ++i) {
    PipelineConfig gen;
    gen.seed = 50 + i;
    gen.camera = {320.0, 320.0, 191.5, 143.5, 384, 288};
    GenerateSpec spec;
    spec.duration = 4.0;
    spec.board_distance = distances[i];
    spec.gaze_bias_deg = 1.0;
    spec.gaze_noise_deg = 0.3;
    const fs::path dir = base / ("d" + std::to_string(i));
    fs::create_directories(dir);
    const std::string cfg_path = generate_session(gen, spec, dir.string());

    const PipelineConfig cfg = load_pipeline_config(cfg_path);
    const RunSummary sum = run_session(cfg);
    if (sum.tracking_lost) {
      fail = "tracking lost at distance " + std::to_string(distances[i]);
      break;
    }
    const Report rep = evaluate_session(cfg);
    bool found = false;
    for (const ReportRow& row : rep.rows) {
      if (row.label == "gaze_target") {
        ape_means.push_back(row.ape.mean);
        ate_rmses.push_back(row.ate.rmse);
        found = true;
      }
    }
    if (!found) fail = "no gaze row at distance " + std::to_string(i);
    analytic.push_back(2.0 * std::tan(0.5 * M_PI / 180.0) * distances[i]);
  }

  Criterion r;
  if (!fail.empty()) {
    r.pass = false;
    r.detail = fail;
    return r;
  }
  bool within = true, monotone = true, precise = true;
  for (int i = 0; i < 4; ++i) {
    if (std::abs(ape_means[i] - analytic[i]) > 0.15 * analytic[i])
      within = false;
    if (i > 0 && ape_means[i] <= ape_means[i - 1]) monotone = false;
    if (ate_rmses[i] >= 0.40 * ape_means[i]) precise = false;
  }
  const double dt = seconds_since(t0);
  r.pass = within && monotone && precise && dt < 600.0;
  char buf[320];
  std::snprintf(buf, sizeof(buf),
                "APE mm {%.1f, %.1f, %.1f, %.1f} vs analytic {%.1f, %.1f, "
                "%.1f, %.1f}, ATE/APE {%.2f, %.2f, %.2f, %.2f}, %.0f s",
                1e3 * ape_means[0], 1e3 * ape_means[1], 1e3 * ape_means[2],
                1e3 * ape_means[3], 1e3 * analytic[0], 1e3 * analytic[1],
                1e3 * analytic[2], 1e3 * analytic[3],
                ate_rmses[0] / ape_means[0], ate_rmses[1] / ape_means[1],
                ate_rmses[2] / ape_means[2], ate_rmses[3] / ape_means[3], dt);
  r.detail = buf;
  return r;
}

// ---------------------------------------------------------------- 6 -------
Criterion criterion_alignment() {
  std::mt19937_64 rng(6006);
  std::normal_distribution<double> gauss;
  auto random_cloud = [&](int n) {
    std::vector<Vec3> pts(n);
    for (auto& p : pts) p = Vec3(gauss(rng), gauss(rng), gauss(rng));
    return pts;
  };
  auto random_pose = [&] {
    const Quat q = Quat(gauss(rng), gauss(rng), gauss(rng), gauss(rng))
                       .normalized();
    return Pose(q, Vec3(gauss(rng), gauss(rng), gauss(rng)));
  };

  double worst_residual = 0.0;
  for (int n : {3, 10, 100}) {
    const auto src = random_cloud(n);
    const Pose T = random_pose();
    std::vector<Vec3> dst(src.size());
    for (size_t i = 0; i < src.size(); ++i) dst[i] = T * src[i];
    const Alignment a = umeyama_align(src, dst);
    for (size_t i = 0; i < src.size(); ++i)
      worst_residual =
          std::max(worst_residual, (dst[i] - a.apply(src[i])).norm());
  }

  // ATE never exceeds APE on paired data: identity is a feasible alignment.
  int ate_violations = 0, datasets = 0;
  for (int k = 0; k < 8; ++k) {
    const int n = 20 + 10 * k;
    Trajectory gt, est;
    const Pose T = random_pose();
    const double noise = 0.02 * k;
    for (int i = 0; i < n; ++i) {
      const Vec3 p(gauss(rng), gauss(rng), gauss(rng));
      gt.push(i, p);
      est.push(i, T * p + noise * Vec3(gauss(rng), gauss(rng), gauss(rng)));
    }
    const ErrorStats e_ape = ape(est, gt);
    const ErrorStats e_ate = ate(est, gt);
    ++datasets;
    if (e_ate.rmse > e_ape.rmse + 1e-12) ++ate_violations;
  }

  Criterion r;
  r.pass = worst_residual < 1e-9 && ate_violations == 0;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "max residual %.2g, ATE<=APE on %d/%d datasets",
                worst_residual, datasets - ate_violations, datasets);
  r.detail = buf;
  return r;
}

// ---------------------------------------------------------------- 7 -------
Criterion criterion_fusion() {
  const auto t0 = Clock::now();

  // Constant-rate rotation, exact strapdown integral.
  double yaw_err = 0.0;
  {
    PoseFilter filter;
    FusedState init;
    filter.initialize(init);
    for (int k = 1; k <= 200; ++k) {
      ImuSample s;
      s.t = k / 200.0;
      s.w = Vec3(0, 0, 1);
      s.a = Vec3(0, 0, 9.81);
      filter.predict(s);
    }
    const Pose expected(Eigen::AngleAxisd(1.0, Vec3::UnitZ())
                            .toRotationMatrix(),
                        Vec3::Zero());
    yaw_err = (expected.inverse() * filter.state().pose).rotation_angle();
  }

  // Covariance PSD through a 10 s predict/update run.
  double min_eig = 0.0;
  {
    SinusoidTrack track;
    track.p0 = Vec3(0, 0, 1.5);
    track.amp = Vec3(0.1, 0.15, 0.05);
    track.freq = Vec3(0.4, 0.3, 0.5);
    track.base_rotation = camera_base_rotation();
    track.yaw_amp = 0.1;
    track.yaw_freq = 0.35;
    const auto imu = synthesize_imu(track, 0.0, 10.0, 200.0,
                                    Vec3(0, 0, -9.81));
    PoseFilter filter;
    FusedState init;
    init.pose = track.pose(0.0);
    init.velocity = track.velocity(0.0);
    filter.initialize(init);
    const Extrinsics extr;
    Eigen::SelfAdjointEigenSolver<Mat15> eig;
    double next_update = 0.0;
    for (const ImuSample& s : imu) {
      filter.predict(s);
      eig.compute(filter.state().covariance, Eigen::EigenvaluesOnly);
      min_eig = std::min(min_eig, eig.eigenvalues().minCoeff());
      if (s.t >= next_update) {
        filter.update(track.pose(s.t), s.t, extr);
        eig.compute(filter.state().covariance, Eigen::EigenvaluesOnly);
        min_eig = std::min(min_eig, eig.eigenvalues().minCoeff());
        next_update += 0.04;
      }
    }
  }

  // End-to-end fused trajectory on a noise-free session.
  double fused_ate = 1e9;
  {
    const fs::path dir = scratch_dir("fusion");
    PipelineConfig gen;
    gen.seed = 70;
    gen.camera = {320.0, 320.0, 191.5, 143.5, 384, 288};
    gen.tracker.pixel_stride = 2;
    GenerateSpec spec;
    spec.duration = 10.0;
    spec.gaze_bias_deg = 0.0;
    spec.gaze_noise_deg = 0.0;
    const std::string cfg_path = generate_session(gen, spec, dir.string());
    const PipelineConfig cfg = load_pipeline_config(cfg_path);
    const RunSummary sum = run_session(cfg);
    if (!sum.tracking_lost) {
      const Trajectory fused = load_tum(cfg.out_dir + "/fused.tum");
      const Trajectory gt = load_tum(cfg.gt_camera_path);
      fused_ate = ate(fused, gt, 0.004).rmse;
    }
  }

  const double dt = seconds_since(t0);
  Criterion r;
  r.pass = yaw_err < 1e-4 && min_eig >= -1e-9 && fused_ate < 0.02;
  char buf[192];
  std::snprintf(buf, sizeof(buf),
                "rotation error %.2g rad, min covariance eigenvalue %.2g, "
                "fused ATE %.4f m, %.0f s",
                yaw_err, min_eig, fused_ate, dt);
  r.detail = buf;
  return r;
}

// ---------------------------------------------------------------- 8 -------
Criterion criterion_throughput() {
  const auto t0 = Clock::now();
  const fs::path dir = scratch_dir("throughput");
  PipelineConfig gen;
  gen.seed = 80;
  gen.camera = {420.0, 420.0, 319.5, 239.5, 640, 480};
  gen.tracker.pixel_stride = 2;
  GenerateSpec spec;
  spec.duration = 3.0;
  spec.room_subdivisions = 65;  // 12 * 65^2 = 50700 triangles
  const std::string cfg_path = generate_session(gen, spec, dir.string());
  const PipelineConfig cfg = load_pipeline_config(cfg_path);
  const RunSummary sum = run_session(cfg);

  const double dt = seconds_since(t0);
  Criterion r;
  // Soft throughput target: the measured rate is reported; the hard gate is
  // only that the pipeline completes.
  r.pass = !sum.tracking_lost && sum.frames_processed == sum.frames_total;
  char buf[192];
  std::snprintf(buf, sizeof(buf),
                "%.2f frames/s (soft target 10) on 50700 triangles at "
                "640x480, %d frames, %.0f s",
                sum.fps, sum.frames_processed, dt);
  r.detail = buf;
  return r;
}

// ---------------------------------------------------------------- 9 -------
std::vector<char> slurp(const fs::path& p) {
  std::vector<char> buf;
  FILE* f = std::fopen(p.c_str(), "rb");
  if (!f) return buf;
  std::fseek(f, 0, SEEK_END);
  const long n = std::ftell(f);
  std::fseek(f, 0, SEEK_SET);
  buf.resize(static_cast<size_t>(n));
  if (n > 0 && std::fread(buf.data(), 1, buf.size(), f) != buf.size())
    buf.clear();
  std::fclose(f);
  return buf;
}

Criterion criterion_determinism() {
  const auto t0 = Clock::now();
  const fs::path dir = scratch_dir("determinism");
  PipelineConfig gen;
  gen.seed = 90;
  gen.camera = {320.0, 320.0, 191.5, 143.5, 384, 288};
  gen.tracker.pixel_stride = 2;
  GenerateSpec spec;
  spec.duration = 2.0;
  spec.gaze_bias_deg = 0.5;
  spec.blink_rate = 0.05;
  const std::string cfg_path = generate_session(gen, spec, dir.string());

  PipelineConfig cfg = load_pipeline_config(cfg_path);
  const std::string out1 = (dir / "run1").string();
  const std::string out2 = (dir / "run2").string();
  cfg.out_dir = out1;
  run_session(cfg);
  cfg.out_dir = out2;
  run_session(cfg);

  std::vector<std::string> names = {"hits.jsonl", "fused.tum",
                                    "localized.tum", "attention.csv"};
  for (const auto& e : fs::directory_iterator(out1)) {
    const std::string n = e.path().filename().string();
    if (n.rfind("attention_", 0) == 0 && e.path().extension() == ".bin")
      names.push_back(n);
  }

  int mismatches = 0;
  for (const std::string& n : names) {
    const auto a = slurp(fs::path(out1) / n);
    const auto b = slurp(fs::path(out2) / n);
    if (a.empty() || a != b) ++mismatches;
  }

  const double dt = seconds_since(t0);
  Criterion r;
  r.pass = mismatches == 0 && names.size() >= 5;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%zu artifacts byte-compared, %d mismatch, %.0f s",
                names.size(), mismatches, dt);
  r.detail = buf;
  return r;
}

struct Entry {
  const char* name;
  Criterion (*fn)();
};

const Entry kCriteria[] = {
    {"NID metric properties", criterion_nid_properties},
    {"analytic gradient vs finite differences", criterion_gradient_fd},
    {"relocalization battery", criterion_relocalization},
    {"gaze mapping vs ray-cast oracle", criterion_gaze_oracle},
    {"bias/precision decomposition", criterion_bias_precision},
    {"rigid alignment exactness", criterion_alignment},
    {"inertial fusion sanity", criterion_fusion},
    {"pipeline throughput", criterion_throughput},
    {"determinism replay", criterion_determinism},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);

  int failures = 0;
  for (int i = 0; i < 9; ++i) {
    if (only != 0 && only != i + 1) continue;
    Criterion r;
    try {
      r = kCriteria[i].fn();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %d: %s (%s)\n", r.pass ? "PASS" : "FAIL",
                i + 1, kCriteria[i].name, r.detail.c_str());
    std::fflush(stdout);
    if (!r.pass) ++failures;
  }
  return failures;
}

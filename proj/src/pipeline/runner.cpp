#include "gaze4d/pipeline/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <vector>

#include "gaze4d/core/errors.hpp"
#include "gaze4d/core/obj_io.hpp"
#include "gaze4d/core/png_io.hpp"
#include "gaze4d/eval/trajectory.hpp"
#include "gaze4d/gaze/attention.hpp"
#include "gaze4d/localize/tracker.hpp"
#include "gaze4d/pipeline/session_io.hpp"
#include "gaze4d/render/rasterizer.hpp"

namespace gaze4d {

namespace fs = std::filesystem;

namespace {

struct LoadedInstance {
  InstanceConfig config;
  SceneInstance instance;
  std::unique_ptr<MaskImage> semantic;  // optional label texture
};

LoadedInstance load_scene_instance(const InstanceConfig& ic) {
  LoadedInstance li;
  li.config = ic;
  auto mesh = std::make_shared<TexturedMesh>(load_obj(ic.obj_path));
  mesh->texture = load_png(ic.texture_path);
  mesh->validate();
  li.instance.instance_id = ic.instance_id;
  li.instance.category = ic.category;
  li.instance.mesh = mesh;
  li.instance.pose = ic.static_pose;
  li.instance.id_texture = {ic.id_width, ic.id_height};
  li.instance.validate();
  if (!ic.semantic_path.empty()) {
    const RgbImage rgb = load_png(ic.semantic_path);
    auto labels = std::make_unique<MaskImage>(rgb.width(), rgb.height(), 0);
    for (int y = 0; y < rgb.height(); ++y)
      for (int x = 0; x < rgb.width(); ++x)
        labels->at(x, y) = rgb.at(x, y, 0);
    li.semantic = std::move(labels);
  }
  return li;
}

std::string json_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

const char* category_name(Category c) {
  switch (c) {
    case Category::kMap: return "map";
    case Category::kObject: return "object";
    case Category::kHuman: return "human";
  }
  return "object";
}

}  // namespace

RunSummary run_session(const PipelineConfig& cfg) {
  if (cfg.map.obj_path.empty())
    throw ConfigError("run requires a [map] section with an obj mesh");
  const SessionBundle bundle = load_session(cfg);
  const CameraIntrinsics& K = cfg.camera;

  LoadedInstance map_li = load_scene_instance(cfg.map);
  std::vector<LoadedInstance> instances;
  instances.reserve(cfg.instances.size());
  for (const InstanceConfig& ic : cfg.instances)
    instances.push_back(load_scene_instance(ic));

  // Start pose: explicit config wins, else the ground-truth track.
  Pose start_cam;
  if (!cfg.start_pose.empty()) {
    start_cam = pose_from_array(cfg.start_pose);
  } else if (bundle.gt_camera.size() > 0) {
    start_cam = bundle.gt_camera.pose_at(0);
  } else {
    throw ConfigError("need session.start_pose or a ground-truth camera track");
  }

  const Pose T_imu_cam = cfg.extrinsics.T_cam_imu.inverse();

  PoseFilter filter(cfg.fusion);
  FusedState init;
  init.t = bundle.frame_times.front();
  init.pose = start_cam * cfg.extrinsics.T_cam_imu;  // world <- IMU body
  Mat15 P0 = Mat15::Zero();
  P0.diagonal().segment<3>(0).setConstant(3e-4);   // attitude [rad²]
  P0.diagonal().segment<3>(3).setConstant(1e-4);   // position [m²]
  P0.diagonal().segment<3>(6).setConstant(2.5e-3); // velocity
  P0.diagonal().segment<3>(9).setConstant(1e-6);   // gyro bias
  P0.diagonal().segment<3>(12).setConstant(1e-4);  // accel bias
  init.covariance = P0;
  filter.initialize(init);

  TrackerState tracker;
  tracker.config = cfg.tracker;

  // Bucket valid gaze samples by nearest frame within the association
  // tolerance.
  const int n_frames = static_cast<int>(bundle.frame_times.size());
  std::vector<std::vector<GazeSample>> frame_gaze(n_frames);
  RunSummary sum;
  sum.frames_total = n_frames;
  for (const GazeSample& g : bundle.gaze) {
    if (!g.valid) {
      ++sum.gaze_skipped;
      continue;
    }
    const auto it = std::lower_bound(bundle.frame_times.begin(),
                                     bundle.frame_times.end(), g.t);
    int best = -1;
    double best_dt = cfg.mapper_tolerance;
    for (const auto* cand :
         {it == bundle.frame_times.end() ? nullptr : &*it,
          it == bundle.frame_times.begin() ? nullptr : &*(it - 1)}) {
      if (!cand) continue;
      const double dt = std::abs(*cand - g.t);
      if (dt <= best_dt + 1e-12) {
        best = static_cast<int>(cand - &bundle.frame_times.front());
        best_dt = dt;
      }
    }
    if (best < 0)
      ++sum.gaze_skipped;
    else
      frame_gaze[best].push_back(g);
  }

  fs::create_directories(cfg.out_dir);
  std::ofstream hits_out(cfg.out_dir + "/hits.jsonl", std::ios::binary);
  std::ofstream diag_out(cfg.out_dir + "/diagnostics.csv", std::ios::binary);
  if (!hits_out || !diag_out)
    throw StreamError("cannot write outputs under " + cfg.out_dir);
  diag_out << "t,iterations,nid,converged,rekeyed,update_accepted,"
              "mahalanobis\n";

  Trajectory fused_traj;   // camera frame, IMU rate (post-update at frames)
  Trajectory localized_traj;  // camera frame, frame rate
  std::map<uint8_t, AttentionTexture> attention;
  std::map<uint8_t, const LoadedInstance*> by_id;
  for (const LoadedInstance& li : instances) by_id[li.instance.instance_id] = &li;

  double iter_sum = 0.0, nid_sum = 0.0;
  size_t imu_idx = 0;
  const auto clock_start = std::chrono::steady_clock::now();

  for (int k = 0; k < n_frames; ++k) {
    const double tf = bundle.frame_times[k];
    while (imu_idx < bundle.imu.size() &&
           bundle.imu[imu_idx].t <= tf + 1e-12) {
      filter.predict(bundle.imu[imu_idx]);
      fused_traj.push(filter.state().t, filter.state().pose * T_imu_cam);
      ++imu_idx;
    }

    const Pose guess =
        k == 0 ? start_cam : filter.initial_guess(cfg.extrinsics, tf);
    const RgbImage live = load_png(bundle.frame_paths[k]);

    Pose cam_est;
    try {
      cam_est = localize(live, tracker, map_li.instance, K, guess);
    } catch (const TrackingLostError& e) {
      sum.tracking_lost = true;
      sum.lost_at = tf;
      sum.lost_reason = e.what();
      break;
    }
    localized_traj.push(tf, cam_est);
    iter_sum += tracker.last.iterations;
    nid_sum += tracker.last.nid.nid;
    if (tracker.last_rekeyed) ++sum.rekeys;

    const UpdateResult ur = filter.update(cam_est, tf, cfg.extrinsics);
    if (ur.accepted)
      ++sum.updates_accepted;
    else
      ++sum.updates_rejected;
    const Pose fused_cam = filter.state().pose * T_imu_cam;
    if (!fused_traj.empty() && std::abs(fused_traj.t.back() - tf) < 1e-9) {
      fused_traj.p.back() = fused_cam.translation();
      fused_traj.q.back() = fused_cam.rotation();
    } else {
      fused_traj.push(tf, fused_cam);
    }

    char diag[160];
    std::snprintf(diag, sizeof(diag), "%.6f,%d,%.6f,%d,%d,%d,%.4f\n", tf,
                  tracker.last.iterations, tracker.last.nid.nid,
                  tracker.last.converged ? 1 : 0,
                  tracker.last_rekeyed ? 1 : 0, ur.accepted ? 1 : 0,
                  ur.mahalanobis);
    diag_out << diag;

    if (!frame_gaze[k].empty()) {
      // Scene rendered from the fused estimate; dynamic instances follow
      // their pose stream (zero-order hold), inactive ones are skipped.
      std::vector<SceneInstance> scene = {map_li.instance};
      for (const LoadedInstance& li : instances) {
        SceneInstance inst = li.instance;
        if (li.config.dynamic) {
          const auto track_it = bundle.instance_tracks.find(inst.instance_id);
          if (track_it == bundle.instance_tracks.end()) continue;
          const auto pose = track_it->second.pose_at(tf);
          if (!pose) continue;  // not yet active
          inst.pose = *pose;
        }
        scene.push_back(inst);
      }
      const RenderOutput view = render(scene, fused_cam, K);

      for (const GazeSample& g : frame_gaze[k]) {
        const auto hit = map_gaze(view, g);
        if (!hit) {
          ++sum.gaze_background;
          continue;
        }
        ++sum.gaze_mapped;
        auto att_it = attention.find(hit->instance_id);
        if (att_it == attention.end())
          att_it = attention
                       .emplace(hit->instance_id,
                                AttentionTexture(hit->instance_id,
                                                 hit->id_width,
                                                 hit->id_height))
                       .first;
        accumulate(att_it->second, *hit, cfg.footprint_radius);

        uint8_t label = 0;
        if (hit->instance_id == map_li.instance.instance_id) {
          label = resolve_semantics(*hit, map_li.semantic.get());
        } else {
          const auto inst_it = by_id.find(hit->instance_id);
          label = resolve_semantics(
              *hit, inst_it == by_id.end() ? nullptr
                                           : inst_it->second->semantic.get());
        }

        hits_out << "{\"t\":" << json_num(g.t)
                 << ",\"instance\":" << int(hit->instance_id)
                 << ",\"category\":\"" << category_name(hit->category)
                 << "\",\"texel\":[" << hit->texel_x << ',' << hit->texel_y
                 << "],\"label\":" << int(label) << ",\"world\":["
                 << json_num(hit->world_point.x()) << ','
                 << json_num(hit->world_point.y()) << ','
                 << json_num(hit->world_point.z()) << "]}\n";
      }
    }
    ++sum.frames_processed;
  }

  const auto clock_end = std::chrono::steady_clock::now();
  const double elapsed =
      std::chrono::duration<double>(clock_end - clock_start).count();
  sum.fps = elapsed > 0 ? sum.frames_processed / elapsed : 0.0;
  if (sum.frames_processed > 0) {
    sum.mean_iterations = iter_sum / sum.frames_processed;
    sum.mean_nid = nid_sum / sum.frames_processed;
  }

  save_tum(fused_traj, cfg.out_dir + "/fused.tum");
  save_tum(localized_traj, cfg.out_dir + "/localized.tum");

  // Median gaze interval approximates the sensor rate for dwell times.
  double gaze_dt = 0.0;
  if (bundle.gaze.size() > 1) {
    std::vector<double> dts;
    dts.reserve(bundle.gaze.size() - 1);
    for (size_t i = 1; i < bundle.gaze.size(); ++i)
      dts.push_back(bundle.gaze[i].t - bundle.gaze[i - 1].t);
    std::nth_element(dts.begin(), dts.begin() + dts.size() / 2, dts.end());
    gaze_dt = dts[dts.size() / 2];
  }

  std::ofstream att_csv(cfg.out_dir + "/attention.csv", std::ios::binary);
  att_csv << "instance,category,hits,dwell_seconds,top_texels\n";
  for (auto& [id, att] : attention) {
    char base[64];
    std::snprintf(base, sizeof(base), "attention_%03d", id);
    save_attention(att, cfg.out_dir + "/" + base + ".bin");
    save_png_gray(attention_heatmap(att.counts),
                  cfg.out_dir + "/heatmap_" + std::to_string(id) + ".png");

    Category cat = Category::kObject;
    if (id == map_li.instance.instance_id)
      cat = map_li.instance.category;
    else if (by_id.count(id))
      cat = by_id.at(id)->instance.category;

    // Top ten texels by count (count desc, then y, x asc for determinism).
    struct Cell {
      uint32_t c;
      int x, y;
    };
    std::vector<Cell> cells;
    for (int y = 0; y < att.counts.height(); ++y)
      for (int x = 0; x < att.counts.width(); ++x)
        if (att.counts.at(x, y) > 0) cells.push_back({att.counts.at(x, y), x, y});
    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
      if (a.c != b.c) return a.c > b.c;
      if (a.y != b.y) return a.y < b.y;
      return a.x < b.x;
    });
    std::string top;
    for (size_t i = 0; i < cells.size() && i < 10; ++i) {
      if (i) top += ';';
      top += std::to_string(cells[i].x) + ':' + std::to_string(cells[i].y) +
             ':' + std::to_string(cells[i].c);
    }
    char row[128];
    std::snprintf(row, sizeof(row), "%d,%s,%llu,%.3f,", id,
                  category_name(cat),
                  static_cast<unsigned long long>(att.total),
                  att.total * gaze_dt);
    att_csv << row << top << "\n";
  }
  att_csv.close();

  std::ofstream summary(cfg.out_dir + "/summary.txt", std::ios::binary);
  summary << "status: "
          << (sum.tracking_lost
                  ? "tracking_lost at t=" + json_num(sum.lost_at) + " (" +
                        sum.lost_reason + ")"
                  : "complete")
          << "\n";
  summary << "frames: " << sum.frames_processed << "/" << sum.frames_total
          << "\n";
  summary << "rekeys: " << sum.rekeys << "\n";
  summary << "updates_accepted: " << sum.updates_accepted << "\n";
  summary << "updates_rejected: " << sum.updates_rejected << "\n";
  summary << "gaze_mapped: " << sum.gaze_mapped << "\n";
  summary << "gaze_background: " << sum.gaze_background << "\n";
  summary << "gaze_skipped: " << sum.gaze_skipped << "\n";
  char line[64];
  std::snprintf(line, sizeof(line), "mean_iterations: %.2f\n",
                sum.mean_iterations);
  summary << line;
  std::snprintf(line, sizeof(line), "mean_nid: %.4f\n", sum.mean_nid);
  summary << line;

  return sum;
}

}  // namespace gaze4d

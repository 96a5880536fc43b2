#include "gaze4d/pipeline/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "gaze4d/core/errors.hpp"

namespace gaze4d {

namespace fs = std::filesystem;

Trajectory load_hit_track(const std::string& hits_path, int instance_id) {
  std::ifstream f(hits_path);
  if (!f) throw StreamError("cannot open " + hits_path);
  Trajectory traj;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    const nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("t") || !j.contains("world") ||
        !j.contains("instance"))
      throw StreamError(hits_path + ":" + std::to_string(lineno) +
                        ": malformed hit record");
    if (instance_id != 0 && j["instance"].get<int>() != instance_id)
      continue;
    const auto& w = j["world"];
    traj.push(j["t"].get<double>(),
              Vec3(w[0].get<double>(), w[1].get<double>(), w[2].get<double>()));
  }
  return traj;
}

namespace {

double mean_range(const Trajectory& points, const Trajectory& camera,
                  double max_dt) {
  if (camera.empty() || points.empty()) return 0.0;
  std::vector<std::pair<size_t, size_t>> pairs;
  try {
    pairs = associate(points, camera, max_dt);
  } catch (const NoOverlapError&) {
    return 0.0;
  }
  double s = 0.0;
  for (const auto& [i, j] : pairs) s += (points.p[i] - camera.p[j]).norm();
  return s / pairs.size();
}

}  // namespace

Report evaluate_session(const PipelineConfig& cfg) {
  Report rep;
  const std::string hits_path = cfg.out_dir + "/hits.jsonl";
  const std::string fused_path = cfg.out_dir + "/fused.tum";
  const std::string localized_path = cfg.out_dir + "/localized.tum";

  Trajectory gt_camera, gt_target;
  if (!cfg.gt_camera_path.empty() && fs::exists(cfg.gt_camera_path))
    gt_camera = load_tum(cfg.gt_camera_path);
  if (!cfg.gt_target_path.empty() && fs::exists(cfg.gt_target_path))
    gt_target = load_tum(cfg.gt_target_path);

  auto add_row = [&](const std::string& label, const Trajectory& est,
                     const Trajectory& gt, double dist) {
    ReportRow row;
    row.label = label;
    row.mean_distance = dist;
    try {
      row.ape = ape(est, gt, cfg.eval_max_dt);
      row.ate = ate(est, gt, cfg.eval_max_dt);
      row.has_ate = true;
      rep.rows.push_back(row);
    } catch (const NoOverlapError&) {
      rep.notices.push_back(label + ": no associable samples");
    } catch (const RankError&) {
      row.has_ate = false;  // alignment degenerate; APE alone
      rep.rows.push_back(row);
      rep.notices.push_back(label + ": trajectory too degenerate to align");
    }
  };

  if (!fs::exists(hits_path)) {
    rep.notices.push_back("gaze hits: " + hits_path + " missing; run first");
  } else if (gt_target.empty()) {
    rep.notices.push_back("gaze hits: no ground-truth target track recorded");
  } else {
    const Trajectory hits =
        load_hit_track(hits_path, cfg.eval_target_instance);
    if (hits.empty()) {
      rep.notices.push_back("gaze hits: no hits on the target instance");
    } else {
      add_row("gaze_target", hits, gt_target,
              mean_range(hits, gt_camera, cfg.eval_max_dt));
    }
  }

  if (gt_camera.empty()) {
    rep.notices.push_back("camera: no ground-truth camera track recorded");
  } else {
    if (fs::exists(fused_path))
      add_row("camera_fused", load_tum(fused_path), gt_camera, 0.0);
    else
      rep.notices.push_back("camera_fused: " + fused_path + " missing");
    if (fs::exists(localized_path))
      add_row("camera_localized", load_tum(localized_path), gt_camera, 0.0);
    else
      rep.notices.push_back("camera_localized: " + localized_path +
                            " missing");
  }

  std::ofstream csv(cfg.out_dir + "/report.csv", std::ios::binary);
  std::ofstream txt(cfg.out_dir + "/report.txt", std::ios::binary);
  if (!csv || !txt)
    throw StreamError("cannot write report under " + cfg.out_dir);
  csv << "label,pairs,mean_distance,ape_mean,ape_std,ape_rmse,ape_max,"
         "ate_rmse\n";
  char line[256];
  txt << "label              pairs  dist[m]  APE mean   APE std    APE rmse   ATE rmse\n";
  for (const ReportRow& r : rep.rows) {
    std::snprintf(line, sizeof(line), "%s,%zu,%.6f,%.6f,%.6f,%.6f,%.6f,",
                  r.label.c_str(), r.ape.count, r.mean_distance, r.ape.mean,
                  r.ape.std_dev, r.ape.rmse, r.ape.max);
    csv << line;
    if (r.has_ate) {
      std::snprintf(line, sizeof(line), "%.6f\n", r.ate.rmse);
    } else {
      std::snprintf(line, sizeof(line), "\n");
    }
    csv << line;
    std::snprintf(line, sizeof(line),
                  "%-18s %5zu  %7.3f  %9.6f  %9.6f  %9.6f  ",
                  r.label.c_str(), r.ape.count, r.mean_distance, r.ape.mean,
                  r.ape.std_dev, r.ape.rmse);
    txt << line;
    if (r.has_ate) {
      std::snprintf(line, sizeof(line), "%9.6f\n", r.ate.rmse);
      txt << line;
    } else {
      txt << "        -\n";
    }
  }
  for (const std::string& n : rep.notices) txt << "note: " << n << "\n";
  return rep;
}

}  // namespace gaze4d

#pragma once

#include <string>
#include <vector>

#include "gaze4d/eval/metrics.hpp"
#include "gaze4d/pipeline/config.hpp"

namespace gaze4d {

// One evaluated track comparison.
struct ReportRow {
  std::string label;
  double mean_distance = 0.0;  // mean camera-to-point range [m]; 0 if n/a
  ErrorStats ape;
  ErrorStats ate;
  bool has_ate = false;
};

struct Report {
  std::vector<ReportRow> rows;
  std::vector<std::string> notices;  // skipped comparisons etc.
};

// Loads run artifacts from cfg.out_dir plus the recorded ground truth and
// computes APE/ATE for the gaze-hit track of the target instance and for
// the fused and localized camera trajectories. Missing pieces are skipped
// with a notice. Writes report.csv and report.txt next to the artifacts.
Report evaluate_session(const PipelineConfig& cfg);

// Gaze-hit world points of one instance (0 = all) read from hits.jsonl.
Trajectory load_hit_track(const std::string& hits_path, int instance_id);

}  // namespace gaze4d

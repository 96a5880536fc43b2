#pragma once

#include <string>

#include "gaze4d/pipeline/config.hpp"

namespace gaze4d {

// Counters and status of one pipeline run.
struct RunSummary {
  int frames_total = 0;
  int frames_processed = 0;
  int rekeys = 0;
  int updates_accepted = 0;
  int updates_rejected = 0;
  size_t gaze_mapped = 0;      // resolved to a surface
  size_t gaze_background = 0;  // valid but hit nothing
  size_t gaze_skipped = 0;     // invalid or not associated with a frame
  double mean_iterations = 0.0;
  double mean_nid = 0.0;
  bool tracking_lost = false;
  double lost_at = 0.0;
  std::string lost_reason;
  double fps = 0.0;  // measured processing rate; stdout only, never an artifact
};

// Executes the full pipeline on a recorded session: IMU-predicted guesses,
// keyframe localization, filter updates, per-frame scene renders and gaze
// mapping. Writes trajectories, attention textures, heatmaps and reports
// under cfg.out_dir. On tracking loss the partial artifacts are still
// written and the summary is flagged.
RunSummary run_session(const PipelineConfig& cfg);

}  // namespace gaze4d

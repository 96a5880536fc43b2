#pragma once

#include <utility>
#include <vector>

#include "gaze4d/eval/alignment.hpp"
#include "gaze4d/eval/trajectory.hpp"

namespace gaze4d {

// Summary statistics of non-negative error magnitudes. std_dev is the
// population standard deviation of the per-sample errors.
struct ErrorStats {
  double mean = 0.0;
  double std_dev = 0.0;
  double rmse = 0.0;
  double max = 0.0;
  size_t count = 0;
};

ErrorStats error_stats(const std::vector<double>& errors);

// Greedy nearest-timestamp pairing: candidate pairs sorted by |Δt|, each
// sample used at most once, pairs beyond max_dt discarded. Throws
// NoOverlapError when no pair survives.
std::vector<std::pair<size_t, size_t>> associate(const Trajectory& a,
                                                 const Trajectory& b,
                                                 double max_dt = 0.05);

// Absolute position error against a fixed target point.
ErrorStats ape(const std::vector<Vec3>& points, const Vec3& target);
// Against a moving target: trajectories are associated first.
ErrorStats ape(const Trajectory& points, const Trajectory& target,
               double max_dt = 0.05);

// Absolute trajectory error: associate, least-squares align est onto gt,
// then residual statistics. Never exceeds the unaligned APE RMSE.
ErrorStats ate(const Trajectory& est, const Trajectory& gt,
               double max_dt = 0.05, bool with_scale = false);

}  // namespace gaze4d

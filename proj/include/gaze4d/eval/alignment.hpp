#pragma once

#include <vector>

#include "gaze4d/core/pose.hpp"

namespace gaze4d {

struct Alignment {
  Pose transform;      // rotation R and translation t
  double scale = 1.0;  // 1 unless with_scale

  // dst ≈ scale·R·src + t.
  Vec3 apply(const Vec3& p) const {
    return scale * (transform.rotation() * p) + transform.translation();
  }
};

// Closed-form least-squares rigid (optionally similarity) alignment
// minimizing Σ‖dst − s·R·src − t‖², with the SVD determinant sign
// correction enforcing a proper rotation. Requires ≥3 non-collinear pairs;
// degenerate configurations raise RankError.
Alignment umeyama_align(const std::vector<Vec3>& src,
                        const std::vector<Vec3>& dst,
                        bool with_scale = false);

}  // namespace gaze4d

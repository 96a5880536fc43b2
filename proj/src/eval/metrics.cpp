#include "gaze4d/eval/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "gaze4d/core/errors.hpp"

namespace gaze4d {

ErrorStats error_stats(const std::vector<double>& errors) {
  if (errors.empty()) throw NoOverlapError("no error samples");
  ErrorStats s;
  s.count = errors.size();
  double sum = 0.0, sum_sq = 0.0;
  for (double e : errors) {
    sum += e;
    sum_sq += e * e;
    s.max = std::max(s.max, e);
  }
  const double n = static_cast<double>(s.count);
  s.mean = sum / n;
  s.rmse = std::sqrt(sum_sq / n);
  const double var = std::max(0.0, sum_sq / n - s.mean * s.mean);
  s.std_dev = std::sqrt(var);
  return s;
}

std::vector<std::pair<size_t, size_t>> associate(const Trajectory& a,
                                                 const Trajectory& b,
                                                 double max_dt) {
  if (a.empty() || b.empty())
    throw NoOverlapError("association over empty trajectory");

  struct Candidate {
    double adt;
    size_t i, j;
  };
  std::vector<Candidate> candidates;
  for (size_t i = 0; i < a.size(); ++i) {
    // b index range within max_dt of a.t[i].
    const auto lo = std::lower_bound(b.t.begin(), b.t.end(),
                                     a.t[i] - max_dt);
    const auto hi =
        std::upper_bound(b.t.begin(), b.t.end(), a.t[i] + max_dt);
    for (auto it = lo; it != hi; ++it) {
      const size_t j = static_cast<size_t>(it - b.t.begin());
      candidates.push_back({std::abs(a.t[i] - b.t[j]), i, j});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& x, const Candidate& y) {
              if (x.adt != y.adt) return x.adt < y.adt;
              if (x.i != y.i) return x.i < y.i;
              return x.j < y.j;
            });

  std::vector<bool> used_a(a.size(), false), used_b(b.size(), false);
  std::vector<std::pair<size_t, size_t>> pairs;
  for (const Candidate& c : candidates) {
    if (used_a[c.i] || used_b[c.j]) continue;
    used_a[c.i] = used_b[c.j] = true;
    pairs.emplace_back(c.i, c.j);
  }
  if (pairs.empty())
    throw NoOverlapError("no trajectory samples within association window");
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

ErrorStats ape(const std::vector<Vec3>& points, const Vec3& target) {
  if (points.empty()) throw NoOverlapError("APE over zero points");
  std::vector<double> d;
  d.reserve(points.size());
  for (const Vec3& p : points) d.push_back((p - target).norm());
  return error_stats(d);
}

ErrorStats ape(const Trajectory& points, const Trajectory& target,
               double max_dt) {
  const auto pairs = associate(points, target, max_dt);
  std::vector<double> d;
  d.reserve(pairs.size());
  for (const auto& [i, j] : pairs)
    d.push_back((points.p[i] - target.p[j]).norm());
  return error_stats(d);
}

ErrorStats ate(const Trajectory& est, const Trajectory& gt, double max_dt,
               bool with_scale) {
  const auto pairs = associate(est, gt, max_dt);
  if (pairs.size() < 3)
    throw RankError("ATE needs at least 3 associated pairs");
  std::vector<Vec3> src, dst;
  src.reserve(pairs.size());
  dst.reserve(pairs.size());
  for (const auto& [i, j] : pairs) {
    src.push_back(est.p[i]);
    dst.push_back(gt.p[j]);
  }
  const Alignment al = umeyama_align(src, dst, with_scale);
  std::vector<double> d;
  d.reserve(src.size());
  for (size_t k = 0; k < src.size(); ++k)
    d.push_back((al.apply(src[k]) - dst[k]).norm());
  return error_stats(d);
}

}  // namespace gaze4d

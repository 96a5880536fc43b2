#include "gaze4d/gaze/attention.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gaze4d/core/errors.hpp"
#include "gaze4d/render/dumps.hpp"

namespace gaze4d {

namespace {

void saturating_add(uint32_t& counter, uint32_t delta) {
  const uint64_t sum = static_cast<uint64_t>(counter) + delta;
  counter = sum > 0xFFFFFFFFull ? 0xFFFFFFFFu : static_cast<uint32_t>(sum);
}

}  // namespace

void accumulate(AttentionTexture& att, const GazeHit& hit,
                int footprint_radius) {
  if (hit.instance_id != att.instance_id)
    throw GeometryError("gaze hit accumulated into wrong instance texture");
  if (!att.counts.in_bounds(hit.texel_x, hit.texel_y))
    throw InvalidSampleError("gaze hit texel outside the attention grid");

  if (footprint_radius <= 0) {
    saturating_add(att.counts.at(hit.texel_x, hit.texel_y), 1);
    att.total += 1;
    return;
  }

  // Cone-weighted disc, normalized to total weight 1, then rounded to unit
  // increments by largest remainder: exact conservation per hit.
  struct Texel {
    int x, y;
    double weight;
    double dist;
  };
  std::vector<Texel> texels;
  const int r = footprint_radius;
  double wsum = 0.0;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      const int x = hit.texel_x + dx;
      const int y = hit.texel_y + dy;
      if (!att.counts.in_bounds(x, y)) continue;
      const double d = std::sqrt(double(dx) * dx + double(dy) * dy);
      if (d > r) continue;
      const double w = 1.0 - d / (r + 1.0);
      texels.push_back({x, y, w, d});
      wsum += w;
    }
  }

  const int budget = 1;
  int allocated = 0;
  std::vector<std::pair<double, size_t>> remainders;
  for (size_t i = 0; i < texels.size(); ++i) {
    const double share = texels[i].weight / wsum * budget;
    const int units = static_cast<int>(share);
    if (units > 0) {
      saturating_add(att.counts.at(texels[i].x, texels[i].y),
                     static_cast<uint32_t>(units));
      allocated += units;
    }
    remainders.emplace_back(share - units, i);
  }
  std::sort(remainders.begin(), remainders.end(),
            [&](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first > b.first;
              const Texel& ta = texels[a.second];
              const Texel& tb = texels[b.second];
              if (ta.dist != tb.dist) return ta.dist < tb.dist;
              if (ta.y != tb.y) return ta.y < tb.y;
              return ta.x < tb.x;
            });
  for (size_t i = 0; allocated < budget && i < remainders.size(); ++i) {
    const Texel& t = texels[remainders[i].second];
    saturating_add(att.counts.at(t.x, t.y), 1);
    ++allocated;
  }
  att.total += budget;
}

MaskImage attention_heatmap(const IdImage& counts) {
  MaskImage img(counts.width(), counts.height(), 0);
  uint32_t max_count = 0;
  for (size_t i = 0; i < counts.size(); ++i)
    max_count = std::max(max_count, counts.data()[i]);
  if (max_count == 0) return img;
  const double scale = 255.0 / std::log1p(static_cast<double>(max_count));
  for (size_t i = 0; i < counts.size(); ++i) {
    const double v =
        std::log1p(static_cast<double>(counts.data()[i])) * scale;
    img.data()[i] = static_cast<uint8_t>(std::lround(v));
  }
  return img;
}

void save_attention(const AttentionTexture& att, const std::string& path) {
  save_id_dump(att.counts, path);
}

AttentionTexture load_attention(uint8_t instance_id,
                                const std::string& path) {
  AttentionTexture att;
  att.instance_id = instance_id;
  att.counts = load_id_dump(path);
  att.total = 0;
  for (size_t i = 0; i < att.counts.size(); ++i)
    att.total += att.counts.data()[i];
  return att;
}

}  // namespace gaze4d

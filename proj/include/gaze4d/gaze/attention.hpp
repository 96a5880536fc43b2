#pragma once

#include <string>

#include "gaze4d/gaze/gaze_mapper.hpp"

namespace gaze4d {

// Per-instance gaze-hit counter grid, dimensioned like the instance's ID
// texture. Counters saturate at 2³²−1.
struct AttentionTexture {
  uint8_t instance_id = 0;
  IdImage counts;
  uint64_t total = 0;  // accepted hits; equals the sum of all counters

  AttentionTexture() = default;
  AttentionTexture(uint8_t id, int width, int height)
      : instance_id(id), counts(width, height, 0) {}
};

// Adds one hit. footprint_radius 0 increments the hit texel; a positive
// radius distributes a normalized cone-weighted disc of total weight 1,
// rounded to integer unit increments by largest remainder (so each hit
// still contributes exactly one count). Throws InvalidSampleError when the
// hit texel lies outside the grid, GeometryError on instance mismatch.
void accumulate(AttentionTexture& att, const GazeHit& hit,
                int footprint_radius = 0);

// 8-bit log-scaled visualization of a counter grid.
MaskImage attention_heatmap(const IdImage& counts);

// Raw counter export (same 16-byte "ID4D" header as the surface-ID dump).
void save_attention(const AttentionTexture& att, const std::string& path);
AttentionTexture load_attention(uint8_t instance_id, const std::string& path);

}  // namespace gaze4d

#pragma once

#include <string>

#include "gaze4d/core/image.hpp"

namespace gaze4d {

// Raw 32-bit buffer dump: 16-byte header (magic "ID4D", u32 width, u32
// height, u32 reserved = 0) followed by little-endian u32 values row-major.
// Used for surface-ID buffers and attention-count textures.
void save_id_dump(const IdImage& img, const std::string& path);
IdImage load_id_dump(const std::string& path);

// Binary PGM (P5, maxval 255).
void save_pgm(const MaskImage& img, const std::string& path);

// Grayscale PFM ("Pf", little-endian, bottom row first).
void save_pfm(const DepthImage& img, const std::string& path);

}  // namespace gaze4d

#pragma once

#include <string>

#include "gaze4d/core/image.hpp"

namespace gaze4d {

// Reads a PNG into an RGB8 image. Gray, gray+alpha, palette and RGBA inputs
// are expanded/stripped to 8-bit RGB. Throws ParseError on I/O or decode
// failure.
RgbImage load_png(const std::string& path);

// Writes an 8-bit RGB PNG. Throws ParseError on I/O failure.
void save_png(const RgbImage& image, const std::string& path);

// Writes a single-channel 8-bit grayscale PNG.
void save_png_gray(const MaskImage& image, const std::string& path);

}  // namespace gaze4d

#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace gaze4d {

/// Row-major raster grid with a fixed channel count.
/// Instantiations used across the project:
///   Image<uint8_t, 3>  8-bit RGB color
///   Image<uint32_t, 1> 32-bit unsigned surface IDs / counters
///   Image<uint8_t, 1>  8-bit masks and semantic labels
///   Image<float, 1>    32-bit float depth (metric z) and luminance
template <typename T, int C = 1>
class Image {
public:
  Image() = default;
  Image(int width, int height, T fill = T{})
      : width_(width), height_(height),
        data_(static_cast<size_t>(width) * height * C, fill) {}

  int width() const { return width_; }
  int height() const { return height_; }
  static constexpr int channels() { return C; }
  bool empty() const { return data_.empty(); }
  size_t size() const { return data_.size(); }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }

  T& at(int x, int y, int c = 0) {
    return data_[(static_cast<size_t>(y) * width_ + x) * C + c];
  }
  const T& at(int x, int y, int c = 0) const {
    return data_[(static_cast<size_t>(y) * width_ + x) * C + c];
  }

  T* row(int y) { return data_.data() + static_cast<size_t>(y) * width_ * C; }
  const T* row(int y) const {
    return data_.data() + static_cast<size_t>(y) * width_ * C;
  }

  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width_ && y >= 0 && y < height_;
  }

  void fill(T value) { data_.assign(data_.size(), value); }

  bool operator==(const Image& other) const {
    return width_ == other.width_ && height_ == other.height_ &&
           data_ == other.data_;
  }

private:
  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

using RgbImage = Image<uint8_t, 3>;
using IdImage = Image<uint32_t, 1>;
using MaskImage = Image<uint8_t, 1>;
using DepthImage = Image<float, 1>;
using GrayImage = Image<float, 1>;

/// Background sentinel for surface-ID buffers.
inline constexpr uint32_t kIdSentinel = 0xFFFFFFFFu;
inline constexpr float kDepthSentinel = std::numeric_limits<float>::infinity();

/// Rec.601 luma from 8-bit RGB, range [0, 255].
inline float luminance(uint8_t r, uint8_t g, uint8_t b) {
  return 0.299f * r + 0.587f * g + 0.114f * b;
}

/// Converts an RGB image to a float luminance grid.
GrayImage to_luminance(const RgbImage& rgb);

/// 2x2 box downsampling (truncates odd edges).
GrayImage downsample_half(const GrayImage& img);

/// Depth downsampling: mean of finite samples, +inf where none.
DepthImage downsample_half_depth(const DepthImage& img);

/// Bilinear sample of a single-channel float image at (x, y) in pixel
/// coordinates. Valid for x in [0, w-1], y in [0, h-1]; callers must check.
float sample_bilinear(const GrayImage& img, double x, double y);

}  // namespace gaze4d

#include "gaze4d/core/image.hpp"

#include <algorithm>
#include <cmath>

namespace gaze4d {

GrayImage to_luminance(const RgbImage& rgb) {
  GrayImage out(rgb.width(), rgb.height());
  const uint8_t* src = rgb.data();
  float* dst = out.data();
  const size_t n = static_cast<size_t>(rgb.width()) * rgb.height();
  for (size_t i = 0; i < n; ++i) {
    dst[i] = luminance(src[3 * i], src[3 * i + 1], src[3 * i + 2]);
  }
  return out;
}

GrayImage downsample_half(const GrayImage& img) {
  const int w = img.width() / 2;
  const int h = img.height() / 2;
  GrayImage out(w, h);
  for (int y = 0; y < h; ++y) {
    const float* r0 = img.row(2 * y);
    const float* r1 = img.row(2 * y + 1);
    float* dst = out.row(y);
    for (int x = 0; x < w; ++x) {
      dst[x] = 0.25f * (r0[2 * x] + r0[2 * x + 1] + r1[2 * x] + r1[2 * x + 1]);
    }
  }
  return out;
}

DepthImage downsample_half_depth(const DepthImage& img) {
  const int w = img.width() / 2;
  const int h = img.height() / 2;
  DepthImage out(w, h, kDepthSentinel);
  for (int y = 0; y < h; ++y) {
    const float* r0 = img.row(2 * y);
    const float* r1 = img.row(2 * y + 1);
    float* dst = out.row(y);
    for (int x = 0; x < w; ++x) {
      const float s[4] = {r0[2 * x], r0[2 * x + 1], r1[2 * x], r1[2 * x + 1]};
      float sum = 0.f;
      int cnt = 0;
      for (float v : s) {
        if (std::isfinite(v)) {
          sum += v;
          ++cnt;
        }
      }
      if (cnt > 0) dst[x] = sum / cnt;
    }
  }
  return out;
}

float sample_bilinear(const GrayImage& img, double x, double y) {
  int x0 = static_cast<int>(std::floor(x));
  int y0 = static_cast<int>(std::floor(y));
  // Clamp so x0+1, y0+1 stay valid when sampling exactly at the far edge.
  x0 = std::clamp(x0, 0, img.width() - 2);
  y0 = std::clamp(y0, 0, img.height() - 2);
  const double fx = x - x0;
  const double fy = y - y0;
  const float* r0 = img.row(y0) + x0;
  const float* r1 = img.row(y0 + 1) + x0;
  const double top = r0[0] + fx * (r0[1] - r0[0]);
  const double bot = r1[0] + fx * (r1[1] - r1[0]);
  return static_cast<float>(top + fy * (bot - top));
}

}  // namespace gaze4d

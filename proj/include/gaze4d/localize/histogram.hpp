#pragma once

#include <Eigen/Core>

#include "gaze4d/core/image.hpp"

namespace gaze4d {

// Intensity bin count for all NID computations.
inline constexpr int kNidBins = 16;

// Normalized information distance between two intensity distributions.
// nid = (H - I)/H in [0, 1]; entropies in nats. A zero-entropy overlap is
// reported as degenerate with nid = 0 (never a division by zero).
struct NidValue {
  double nid = 0.0;
  double joint_entropy = 0.0;
  double mutual_information = 0.0;
  bool degenerate = false;
};

// Co-occurrence statistics of two luminance images.
struct HistogramPair {
  Eigen::MatrixXd joint;       // (bin_a, bin_b) weights
  Eigen::VectorXd marginal_a;
  Eigen::VectorXd marginal_b;
  double total = 0.0;

  explicit HistogramPair(int bins = kNidBins)
      : joint(Eigen::MatrixXd::Zero(bins, bins)),
        marginal_a(Eigen::VectorXd::Zero(bins)),
        marginal_b(Eigen::VectorXd::Zero(bins)) {}

  int bins() const { return static_cast<int>(marginal_a.size()); }

  // Exact (hard) binning: one bin per sample.
  void add_hard(float lum_a, float lum_b, double w = 1.0);
  // Soft binning: cubic B-spline kernel over 4 adjacent bins per sample.
  void add_soft(float lum_a, float lum_b, double w = 1.0);

  // Checks joint/marginal/total consistency (1e-9).
  void validate() const;
};

// Exact bin of a luminance value in [0, 255].
inline int hard_bin(float lum, int bins) {
  int b = static_cast<int>(lum * bins / 256.0f);
  if (b < 0) b = 0;
  if (b >= bins) b = bins - 1;
  return b;
}

// Cubic B-spline kernel, support (-2, 2), partition of unity on the
// integer grid.
double bspline3(double x);
double bspline3_deriv(double x);

// Soft-bin decomposition of one luminance value: 4 consecutive bins
// starting at index i0, with kernel weights w (sum 1). The bin coordinate
// u = 1 + lum*(bins-3)/256 keeps the full support inside [0, bins-1].
struct SoftBins {
  int i0 = 0;
  double w[4] = {0, 0, 0, 0};
};
SoftBins soft_bins(double lum, int bins);
// Kernel derivatives d w_k / d u at the same support.
SoftBins soft_bins_deriv(double lum, int bins);

// Scale from luminance to bin coordinate: du/dlum.
inline double bin_scale(int bins) { return (bins - 3) / 256.0; }

// NID of an accumulated histogram. Throws InsufficientOverlapError when
// total weight is zero.
NidValue nid_from_histogram(const HistogramPair& h);

// Image-pair NID from exact (hard-binned) luminance co-occurrence over all
// pixels. Symmetric; a metric on the hard-binned distributions.
NidValue nid(const GrayImage& a, const GrayImage& b);
NidValue nid(const RgbImage& a, const RgbImage& b);

// Soft-binned variant over aligned images (same kernel as the tracker
// cost); checked for symmetry and range only.
NidValue nid_soft(const GrayImage& a, const GrayImage& b);

}  // namespace gaze4d

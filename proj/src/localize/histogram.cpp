#include "gaze4d/localize/histogram.hpp"

#include <cmath>

#include "gaze4d/core/errors.hpp"

namespace gaze4d {

void HistogramPair::add_hard(float lum_a, float lum_b, double w) {
  const int ia = hard_bin(lum_a, bins());
  const int ib = hard_bin(lum_b, bins());
  joint(ia, ib) += w;
  marginal_a(ia) += w;
  marginal_b(ib) += w;
  total += w;
}

void HistogramPair::add_soft(float lum_a, float lum_b, double w) {
  const SoftBins sa = soft_bins(lum_a, bins());
  const SoftBins sb = soft_bins(lum_b, bins());
  for (int i = 0; i < 4; ++i) {
    const double wa = w * sa.w[i];
    marginal_a(sa.i0 + i) += wa;
    for (int j = 0; j < 4; ++j) joint(sa.i0 + i, sb.i0 + j) += wa * sb.w[j];
  }
  for (int j = 0; j < 4; ++j) marginal_b(sb.i0 + j) += w * sb.w[j];
  total += w;
}

void HistogramPair::validate() const {
  const double tol = 1e-9 * std::max(1.0, total);
  if (std::abs(joint.sum() - total) > tol)
    throw GeometryError("histogram joint does not sum to total");
  if ((joint.rowwise().sum() - marginal_a).cwiseAbs().maxCoeff() > tol)
    throw GeometryError("histogram marginal_a inconsistent with joint");
  if ((joint.colwise().sum().transpose() - marginal_b).cwiseAbs().maxCoeff() >
      tol)
    throw GeometryError("histogram marginal_b inconsistent with joint");
}

double bspline3(double x) {
  const double ax = std::abs(x);
  if (ax >= 2.0) return 0.0;
  if (ax <= 1.0) return (4.0 - 6.0 * ax * ax + 3.0 * ax * ax * ax) / 6.0;
  const double t = 2.0 - ax;
  return t * t * t / 6.0;
}

double bspline3_deriv(double x) {
  const double ax = std::abs(x);
  double d;
  if (ax >= 2.0) {
    d = 0.0;
  } else if (ax <= 1.0) {
    d = (3.0 * ax * ax - 4.0 * ax) / 2.0;
  } else {
    const double t = 2.0 - ax;
    d = -t * t / 2.0;
  }
  return x < 0.0 ? -d : d;
}

namespace {

inline double bin_coord(double lum, int bins) {
  double y = lum;
  if (y < 0.0) y = 0.0;
  if (y > 255.0) y = 255.0;
  return 1.0 + y * bin_scale(bins);
}

}  // namespace

SoftBins soft_bins(double lum, int bins) {
  const double u = bin_coord(lum, bins);
  SoftBins s;
  s.i0 = static_cast<int>(std::floor(u)) - 1;
  for (int k = 0; k < 4; ++k) s.w[k] = bspline3(u - (s.i0 + k));
  return s;
}

SoftBins soft_bins_deriv(double lum, int bins) {
  const double u = bin_coord(lum, bins);
  SoftBins s;
  s.i0 = static_cast<int>(std::floor(u)) - 1;
  for (int k = 0; k < 4; ++k) s.w[k] = bspline3_deriv(u - (s.i0 + k));
  return s;
}

namespace {

double entropy(const double* p, int n, double total) {
  double h = 0.0;
  for (int i = 0; i < n; ++i) {
    if (p[i] > 0.0) {
      const double q = p[i] / total;
      h -= q * std::log(q);
    }
  }
  return h;
}

}  // namespace

NidValue nid_from_histogram(const HistogramPair& h) {
  if (!(h.total > 0.0))
    throw InsufficientOverlapError("NID histogram has zero total weight");
  const double ha = entropy(h.marginal_a.data(), h.bins(), h.total);
  const double hb = entropy(h.marginal_b.data(), h.bins(), h.total);
  const double hj =
      entropy(h.joint.data(), h.bins() * h.bins(), h.total);
  NidValue v;
  if (hj <= 0.0) {
    v.degenerate = true;  // constant overlap: H = 0 => NID = 0 by convention
    return v;
  }
  v.joint_entropy = hj;
  double mi = ha + hb - hj;
  if (mi < 0.0) mi = 0.0;
  if (mi > hj) mi = hj;
  v.mutual_information = mi;
  double d = (hj - mi) / hj;
  if (d < 0.0) d = 0.0;
  if (d > 1.0) d = 1.0;
  v.nid = d;
  return v;
}

namespace {

template <typename GetPair>
NidValue nid_hard_impl(int n, GetPair&& get) {
  if (n <= 0) throw InsufficientOverlapError("NID over zero pixels");
  HistogramPair h(kNidBins);
  for (int i = 0; i < n; ++i) {
    const auto [la, lb] = get(i);
    h.add_hard(la, lb);
  }
  return nid_from_histogram(h);
}

}  // namespace

NidValue nid(const GrayImage& a, const GrayImage& b) {
  if (a.width() != b.width() || a.height() != b.height())
    throw GeometryError("NID inputs must share dimensions");
  return nid_hard_impl(static_cast<int>(a.size()), [&](int i) {
    return std::pair<float, float>(a.data()[i], b.data()[i]);
  });
}

NidValue nid(const RgbImage& a, const RgbImage& b) {
  if (a.width() != b.width() || a.height() != b.height())
    throw GeometryError("NID inputs must share dimensions");
  const int n = a.width() * a.height();
  return nid_hard_impl(n, [&](int i) {
    const uint8_t* pa = a.data() + 3 * i;
    const uint8_t* pb = b.data() + 3 * i;
    return std::pair<float, float>(luminance(pa[0], pa[1], pa[2]),
                                   luminance(pb[0], pb[1], pb[2]));
  });
}

NidValue nid_soft(const GrayImage& a, const GrayImage& b) {
  if (a.width() != b.width() || a.height() != b.height())
    throw GeometryError("NID inputs must share dimensions");
  if (a.size() == 0) throw InsufficientOverlapError("NID over zero pixels");
  HistogramPair h(kNidBins);
  for (size_t i = 0; i < a.size(); ++i) h.add_soft(a.data()[i], b.data()[i]);
  return nid_from_histogram(h);
}

}  // namespace gaze4d

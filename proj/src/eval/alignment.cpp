#include "gaze4d/eval/alignment.hpp"

#include <Eigen/Dense>

#include "gaze4d/core/errors.hpp"

namespace gaze4d {

Alignment umeyama_align(const std::vector<Vec3>& src,
                        const std::vector<Vec3>& dst, bool with_scale) {
  if (src.size() != dst.size())
    throw RankError("alignment point sets differ in size");
  const size_t n = src.size();
  if (n < 3) throw RankError("alignment needs at least 3 pairs");

  Vec3 mu_src = Vec3::Zero(), mu_dst = Vec3::Zero();
  for (size_t i = 0; i < n; ++i) {
    mu_src += src[i];
    mu_dst += dst[i];
  }
  mu_src /= double(n);
  mu_dst /= double(n);

  Mat3 sigma = Mat3::Zero();
  double var_src = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const Vec3 s = src[i] - mu_src;
    const Vec3 d = dst[i] - mu_dst;
    sigma += d * s.transpose();
    var_src += s.squaredNorm();
  }
  sigma /= double(n);
  var_src /= double(n);

  Eigen::JacobiSVD<Mat3> svd(sigma,
                             Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec3 sv = svd.singularValues();
  // Collinear or coincident clouds leave the rotation underdetermined.
  if (sv(0) < 1e-12 || sv(1) < 1e-9 * sv(0))
    throw RankError("degenerate point configuration for alignment");

  Vec3 fix = Vec3::Ones();
  if (svd.matrixU().determinant() * svd.matrixV().determinant() < 0.0)
    fix(2) = -1.0;
  const Mat3 R =
      svd.matrixU() * fix.asDiagonal() * svd.matrixV().transpose();

  Alignment out;
  if (with_scale) {
    if (var_src < 1e-24)
      throw RankError("zero-variance source cloud for scaled alignment");
    out.scale = sv.dot(fix) / var_src;
  }
  const Vec3 t = mu_dst - out.scale * (R * mu_src);
  out.transform = Pose(R, t);
  return out;
}

}  // namespace gaze4d

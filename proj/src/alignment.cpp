#include "baltic/alignment.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include <Eigen/SVD>

#include "baltic/error.hpp"
#include "baltic/numeric.hpp"
#include "baltic/spatial_index.hpp"

namespace baltic {

namespace {

// Relative singular-value floor below which a direction counts as absent.
constexpr double kRankTolerance = 1e-12;

}  // namespace

SimilarityTransform umeyama_align(std::span<const Vec3> src, std::span<const Vec3> dst, bool with_scale) {
  if (src.size() != dst.size()) {
    throw InvalidArgument("umeyama_align: size mismatch (" + std::to_string(src.size()) + " vs " +
                          std::to_string(dst.size()) + ")");
  }
  if (src.size() < 3) throw InvalidArgument("umeyama_align: need at least 3 point pairs");

  const double n = static_cast<double>(src.size());
  const Vec3 mu_src = centroid(src);
  const Vec3 mu_dst = centroid(dst);

  Mat3 cross = Mat3::Zero();
  Mat3 src_scatter = Mat3::Zero();
  double src_var = 0.0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    const Vec3 s = src[i] - mu_src;
    const Vec3 d = dst[i] - mu_dst;
    cross.noalias() += d * s.transpose();
    src_scatter.noalias() += s * s.transpose();
    src_var += s.squaredNorm();
  }
  cross /= n;
  src_var /= n;

  const Eigen::JacobiSVD<Mat3> src_svd(src_scatter);
  const Vec3 src_sv = src_svd.singularValues();
  if (!(src_sv[0] > 0.0) || src_sv[1] <= kRankTolerance * src_sv[0]) {
    throw DegenerateConfiguration("degenerate configuration: source points are collinear or coincident");
  }

  const Eigen::JacobiSVD<Mat3> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec3 d = svd.singularValues();
  if (!(d[0] > 0.0) || d[1] <= kRankTolerance * d[0]) {
    throw DegenerateConfiguration("degenerate configuration: cross-covariance rank below 2");
  }
  const Mat3& u = svd.matrixU();
  const Mat3& v = svd.matrixV();

  Vec3 sign = Vec3::Ones();
  if (u.determinant() * v.determinant() < 0.0) sign[2] = -1.0;
  const Mat3 r = u * sign.asDiagonal() * v.transpose();

  const double scale = with_scale ? d.dot(sign) / src_var : 1.0;
  if (!(scale > 0.0)) throw DegenerateConfiguration("degenerate configuration: non-positive scale estimate");
  const Vec3 t = mu_dst - scale * r * mu_src;
  return {scale, UnitQuaternion::from_matrix(r), t};
}

double alignment_rmse(const SimilarityTransform& t, std::span<const Vec3> src, std::span<const Vec3> dst) {
  if (src.size() != dst.size() || src.empty()) throw InvalidArgument("alignment_rmse: invalid point sets");
  CompensatedSum sum;
  for (std::size_t i = 0; i < src.size(); ++i) sum.add((dst[i] - t.apply(src[i])).squaredNorm());
  return std::sqrt(sum.value() / static_cast<double>(src.size()));
}

double rms_radius(std::span<const Vec3> points) {
  const Vec3 c = centroid(points);
  CompensatedSum sum;
  for (const auto& p : points) sum.add((p - c).squaredNorm());
  return std::sqrt(sum.value() / static_cast<double>(points.size()));
}

ScaleNormalization rms_scale_normalize(const PointCloud& cloud, const PointCloud& reference) {
  if (cloud.empty() || reference.empty()) throw InvalidArgument("rms_scale_normalize: empty point cloud");
  const double r_cloud = rms_radius(cloud.points);
  const double r_ref = rms_radius(reference.points);
  if (!(r_cloud > 0.0)) throw InvalidArgument("rms_scale_normalize: cloud has zero RMS radius");
  if (!(r_ref > 0.0)) throw InvalidArgument("rms_scale_normalize: reference has zero RMS radius");

  ScaleNormalization out;
  out.scale = r_ref / r_cloud;
  const Vec3 c = centroid(cloud.points);
  out.scaled.colors = cloud.colors;
  out.scaled.points.reserve(cloud.size());
  for (const auto& p : cloud.points) out.scaled.points.push_back(c + out.scale * (p - c));
  return out;
}

void IcpConfig::validate() const {
  if (!(max_correspondence_dist > 0.0) || !std::isfinite(max_correspondence_dist)) {
    throw InvalidArgument("ICP: max_correspondence_dist must be positive");
  }
  if (max_iterations <= 0) throw InvalidArgument("ICP: max_iterations must be positive");
  if (!(convergence_eps > 0.0)) throw InvalidArgument("ICP: convergence_eps must be positive");
}

double default_correspondence_distance(const PointCloud& reference) {
  return 5.0 * mean_nearest_other_distance(SpatialIndex(reference));
}

namespace {

struct Correspondences {
  std::vector<Vec3> src;
  std::vector<Vec3> dst;
  double rmse = 0.0;
};

Correspondences correspond(const PointCloud& src, const SpatialIndex& dst_index, const SimilarityTransform& t,
                           double max_dist) {
  std::vector<std::optional<Neighbor>> nn(src.size());
  parallel_for(src.size(), [&](std::size_t i) {
    const Neighbor nb = dst_index.nearest(t.apply(src.points[i]));
    if (nb.distance <= max_dist) nn[i] = nb;
  });

  Correspondences c;
  CompensatedSum sq;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (!nn[i]) continue;
    c.src.push_back(src.points[i]);
    c.dst.push_back(dst_index.point(nn[i]->index));
    sq.add(nn[i]->distance * nn[i]->distance);
  }
  if (!c.src.empty()) c.rmse = std::sqrt(sq.value() / static_cast<double>(c.src.size()));
  return c;
}

}  // namespace

IcpResult icp_rigid(const PointCloud& src, const PointCloud& dst, const IcpConfig& cfg,
                    const SimilarityTransform& init) {
  if (src.empty() || dst.empty()) throw InvalidArgument("ICP: empty point cloud");
  cfg.validate();
  if (init.scale() != 1.0) throw InvalidArgument("ICP: initial transform must be rigid (scale 1)");
  const SpatialIndex dst_index(dst);
  const double n = static_cast<double>(src.size());

  IcpResult result;
  result.transform = init;

  SimilarityTransform current = init;
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    const Correspondences c = correspond(src, dst_index, current, cfg.max_correspondence_dist);
    if (c.src.empty()) break;
    if (!result.rmse_history.empty() && c.rmse > result.rmse_history.back()) break;  // reject the worse iterate

    const double previous = result.rmse_history.empty() ? std::numeric_limits<double>::infinity()
                                                        : result.rmse_history.back();
    result.transform = current;
    result.fitness = static_cast<double>(c.src.size()) / n;
    result.inlier_rmse = c.rmse;
    result.iterations = it;
    result.rmse_history.push_back(c.rmse);

    if (c.rmse == 0.0 || std::abs(previous - c.rmse) < cfg.convergence_eps * previous) break;
    if (c.src.size() < 3) break;
    try {
      current = umeyama_align(c.src, c.dst, /*with_scale=*/false);
    } catch (const DegenerateConfiguration&) {
      break;
    }
  }
  return result;
}

}  // namespace baltic

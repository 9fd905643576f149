#pragma once

#include <span>
#include <vector>

#include "baltic/geometry.hpp"

namespace baltic {

/// Least-squares similarity (or rigid, when `with_scale` is false) transform
/// mapping src onto dst, i.e. minimizing sum |dst_i - (s R src_i + t)|^2.
///
/// Closed form after Umeyama (1991): SVD of the cross-covariance with the
/// determinant sign fix, so the rotation is always proper. Planar inputs are
/// accepted; collinear or coincident inputs throw DegenerateConfiguration.
SimilarityTransform umeyama_align(std::span<const Vec3> src, std::span<const Vec3> dst, bool with_scale);

/// Root-mean-square residual |dst_i - T(src_i)|.
double alignment_rmse(const SimilarityTransform& t, std::span<const Vec3> src, std::span<const Vec3> dst);

/// sqrt(mean |p - centroid|^2).
double rms_radius(std::span<const Vec3> points);

struct ScaleNormalization {
  /// Factor applied to the evaluated cloud: rms_radius(reference) / rms_radius(cloud).
  double scale = 1.0;
  /// The cloud scaled about its own centroid.
  PointCloud scaled;
};

ScaleNormalization rms_scale_normalize(const PointCloud& cloud, const PointCloud& reference);

struct IcpConfig {
  double max_correspondence_dist = 0.0;
  int max_iterations = 50;
  /// Stop when the inlier RMSE changes by less than this fraction.
  double convergence_eps = 1e-6;

  void validate() const;
};

struct IcpResult {
  /// Rigid: scale is always 1.
  SimilarityTransform transform;
  /// Fraction of source points with a correspondence under `transform`.
  double fitness = 0.0;
  double inlier_rmse = 0.0;
  int iterations = 0;
  /// Inlier RMSE of every accepted iterate; non-increasing.
  std::vector<double> rmse_history;
};

/// 5x the mean nearest-neighbor spacing of the reference cloud.
double default_correspondence_distance(const PointCloud& reference);

/// Point-to-point rigid ICP of src onto dst starting from `init`.
///
/// Each iteration pairs every transformed source point with its nearest
/// destination point, keeps pairs within max_correspondence_dist and re-solves
/// the rigid transform on them. An iterate whose inlier RMSE exceeds the
/// previous one is rejected and the run stops, so the RMSE history is monotone.
/// With no correspondences at the start the result is `init` with fitness 0.
IcpResult icp_rigid(const PointCloud& src, const PointCloud& dst, const IcpConfig& cfg,
                    const SimilarityTransform& init = SimilarityTransform::identity());

}  // namespace baltic

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "baltic/geometry.hpp"

namespace baltic {

struct Neighbor {
  std::size_t index = 0;
  double distance = 0.0;
};

/// Immutable k-d tree over a point set with exact queries.
///
/// Results match a linear scan: neighbors are ordered by (distance, index), so
/// equidistant points resolve to the lowest point index. The index copies the
/// points and may be shared across threads.
class SpatialIndex {
 public:
  explicit SpatialIndex(std::span<const Vec3> points);
  explicit SpatialIndex(const PointCloud& cloud) : SpatialIndex(std::span<const Vec3>(cloud.points)) {}

  std::size_t size() const { return points_.size(); }
  const Vec3& point(std::size_t i) const { return points_[i]; }

  /// Throws InvalidArgument when the index is empty.
  Neighbor nearest(const Vec3& query) const;

  /// Nearest point whose index differs from `excluded`; requires size() >= 2.
  Neighbor nearest_other(const Vec3& query, std::size_t excluded) const;

  /// Up to k nearest points, ascending by (distance, index), skipping `excluded`
  /// when it is a valid index.
  std::vector<Neighbor> k_nearest(const Vec3& query, std::size_t k,
                                  std::size_t excluded = kNoExclusion) const;

  static constexpr std::size_t kNoExclusion = static_cast<std::size_t>(-1);

 private:
  struct Node {
    // Leaf when axis < 0; [begin, end) into order_.
    std::int32_t axis = -1;
    double split = 0.0;
    std::uint32_t begin = 0, end = 0;
    std::uint32_t left = 0, right = 0;
  };

  std::uint32_t build(std::uint32_t begin, std::uint32_t end, int depth);

  template <typename Visitor>
  void search(std::uint32_t node, const Vec3& q, Visitor& visitor) const;

  std::vector<Vec3> points_;
  std::vector<std::uint32_t> order_;
  std::vector<Node> nodes_;
};

/// Mean distance from each indexed point to its nearest other point, in input
/// units. Requires at least two points.
double mean_nearest_other_distance(const SpatialIndex& index);

/// Linear-scan nearest neighbor with lowest-index tie-breaking.
Neighbor nearest_linear_scan(std::span<const Vec3> points, const Vec3& query);

}  // namespace baltic

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <unordered_map>

#include "baltic/geometry.hpp"

namespace baltic {

using VoxelIndex = std::array<std::int64_t, 3>;

struct VoxelIndexHash {
  std::size_t operator()(const VoxelIndex& v) const noexcept;
};

/// Sparse occupancy grid: voxel index -> number of points inside.
class VoxelGrid {
 public:
  VoxelGrid(double voxel_size, Vec3 origin);

  double voxel_size() const { return voxel_size_; }
  const Vec3& origin() const { return origin_; }

  /// floor((p - origin) / voxel_size) per axis.
  VoxelIndex index_of(const Vec3& p) const;
  Vec3 center_of(const VoxelIndex& idx) const;

  void insert(const Vec3& p);

  /// Zero for unoccupied voxels.
  std::size_t count(const VoxelIndex& idx) const;
  std::size_t occupied() const { return counts_.size(); }
  std::size_t total_points() const { return total_; }
  const std::unordered_map<VoxelIndex, std::size_t, VoxelIndexHash>& counts() const { return counts_; }

 private:
  double voxel_size_;
  Vec3 origin_;
  std::unordered_map<VoxelIndex, std::size_t, VoxelIndexHash> counts_;
  std::size_t total_ = 0;
};

/// Bins every point of the cloud. The origin defaults to the cloud's minimum corner.
/// Throws InvalidArgument for an empty cloud or a non-positive voxel size.
VoxelGrid voxelize(const PointCloud& cloud, double voxel_size,
                   std::optional<Vec3> origin = std::nullopt);

}  // namespace baltic

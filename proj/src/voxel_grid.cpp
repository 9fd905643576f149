#include "baltic/voxel_grid.hpp"

#include <cmath>
#include <limits>

#include "baltic/error.hpp"

namespace baltic {

std::size_t VoxelIndexHash::operator()(const VoxelIndex& v) const noexcept {
  // Teschner et al. spatial hash primes, widened to 64 bit.
  const auto h = static_cast<std::uint64_t>(v[0]) * 73856093ULL ^ static_cast<std::uint64_t>(v[1]) * 19349663ULL ^
                 static_cast<std::uint64_t>(v[2]) * 83492791ULL;
  return static_cast<std::size_t>(h ^ (h >> 29));
}

VoxelGrid::VoxelGrid(double voxel_size, Vec3 origin) : voxel_size_(voxel_size), origin_(std::move(origin)) {
  if (!(voxel_size > 0.0) || !std::isfinite(voxel_size)) {
    throw InvalidArgument("voxel size must be positive and finite");
  }
  if (!is_finite(origin_)) throw InvalidArgument("voxel grid origin must be finite");
}

VoxelIndex VoxelGrid::index_of(const Vec3& p) const {
  VoxelIndex idx{};
  for (int a = 0; a < 3; ++a) {
    const double f = std::floor((p[a] - origin_[a]) / voxel_size_);
    if (!(std::abs(f) < 9.0e18)) throw InvalidArgument("point lies outside the representable voxel range");
    idx[a] = static_cast<std::int64_t>(f);
  }
  return idx;
}

Vec3 VoxelGrid::center_of(const VoxelIndex& idx) const {
  return {origin_.x() + (static_cast<double>(idx[0]) + 0.5) * voxel_size_,
          origin_.y() + (static_cast<double>(idx[1]) + 0.5) * voxel_size_,
          origin_.z() + (static_cast<double>(idx[2]) + 0.5) * voxel_size_};
}

void VoxelGrid::insert(const Vec3& p) {
  ++counts_[index_of(p)];
  ++total_;
}

std::size_t VoxelGrid::count(const VoxelIndex& idx) const {
  const auto it = counts_.find(idx);
  return it == counts_.end() ? 0 : it->second;
}

VoxelGrid voxelize(const PointCloud& cloud, double voxel_size, std::optional<Vec3> origin) {
  if (cloud.empty()) throw InvalidArgument("empty point cloud");
  cloud.validate();
  VoxelGrid grid(voxel_size, origin ? *origin : bounding_box(cloud.points).min);
  for (const auto& p : cloud.points) grid.insert(p);
  return grid;
}

}  // namespace baltic

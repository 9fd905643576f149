#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "baltic/camera.hpp"
#include "baltic/geometry.hpp"
#include "baltic/io.hpp"
#include "baltic/voxel_grid.hpp"

namespace baltic {

inline constexpr double kDefaultWeakVoxelSize = 0.02;
inline constexpr std::size_t kDefaultWeakThreshold = 3;

struct WeakVoxel {
  VoxelIndex index{};
  Vec3 center = Vec3::Zero();
  std::size_t count = 0;
};

/// Under-populated voxels, sorted by index.
struct WeakVoxelSet {
  std::vector<WeakVoxel> voxels;
  double voxel_size = kDefaultWeakVoxelSize;
  Vec3 origin = Vec3::Zero();
  std::size_t threshold = kDefaultWeakThreshold;

  std::size_t size() const { return voxels.size(); }
  bool empty() const { return voxels.empty(); }
};

struct WeakVoxelOptions {
  double voxel_size = kDefaultWeakVoxelSize;
  std::size_t threshold = kDefaultWeakThreshold;
  /// Grid origin; defaults to the cloud's minimum corner.
  std::optional<Vec3> origin;
  /// Also report empty voxels inside the cloud's voxel-aligned bounding box.
  bool include_empty_in_bbox = false;
};

/// Voxels holding fewer than `threshold` points. Throws InvalidArgument for an
/// empty cloud, a non-positive voxel size or a zero threshold.
WeakVoxelSet find_weak_voxels(const PointCloud& cloud, const WeakVoxelOptions& options = {});

struct CandidateImage {
  std::string id;
  CameraPinhole camera;
};

/// Optional camera-frame depth window [min_depth, max_depth].
struct DepthBand {
  double min_depth = 0.0;
  double max_depth = 0.0;
};

/// Indices into `weak.voxels` whose centers the camera sees, ascending.
std::vector<std::size_t> visible_weak_voxels(const CandidateImage& img, const WeakVoxelSet& weak,
                                             const std::optional<DepthBand>& band = std::nullopt);

/// Number of weak-voxel centers with positive depth projecting inside the image.
std::size_t score_image(const CandidateImage& img, const WeakVoxelSet& weak,
                        const std::optional<DepthBand>& band = std::nullopt);

struct SelectionResult {
  std::vector<std::string> selected;
  std::vector<std::size_t> marginal_gains;
  std::size_t covered = 0;
  std::size_t total_weak = 0;
  /// Cumulative covered fraction after each pick.
  std::vector<double> coverage_curve;
};

struct SelectionOptions {
  std::optional<std::size_t> budget;
  std::optional<DepthBand> depth_band;
};

/// Greedy max-coverage. Ties go to the smallest id, then the earlier candidate.
/// Stops at zero gain or when the budget is exhausted.
SelectionResult greedy_select(const std::vector<CandidateImage>& candidates, const WeakVoxelSet& weak,
                              const SelectionOptions& options = {});

/// Same selection, driven by precomputed coverage sets (indices into the weak set).
SelectionResult greedy_select_sets(const std::vector<std::string>& ids,
                                   const std::vector<std::vector<std::size_t>>& coverage, std::size_t total_weak,
                                   std::optional<std::size_t> budget = std::nullopt);

/// One candidate per registered image, named after the image file.
std::vector<CandidateImage> candidates_from_colmap(const io::ColmapSparseModel& model);

}  // namespace baltic

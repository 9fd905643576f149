#include "baltic/cross_domain.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

#include "baltic/error.hpp"
#include "baltic/io.hpp"
#include "baltic/numeric.hpp"

namespace baltic {

namespace {

constexpr std::size_t kMaxBboxVoxels = 100'000'000;

}  // namespace

WeakVoxelSet find_weak_voxels(const PointCloud& cloud, const WeakVoxelOptions& options) {
  if (cloud.empty()) throw InvalidArgument("find_weak_voxels: empty point cloud");
  if (options.threshold < 1) throw InvalidArgument("find_weak_voxels: threshold must be at least 1");
  const VoxelGrid grid = voxelize(cloud, options.voxel_size, options.origin);

  WeakVoxelSet out;
  out.voxel_size = grid.voxel_size();
  out.origin = grid.origin();
  out.threshold = options.threshold;

  if (options.include_empty_in_bbox) {
    VoxelIndex lo = grid.counts().begin()->first, hi = lo;
    for (const auto& [idx, n] : grid.counts()) {
      for (int a = 0; a < 3; ++a) {
        lo[a] = std::min(lo[a], idx[a]);
        hi[a] = std::max(hi[a], idx[a]);
      }
    }
    double total = 1.0;
    for (int a = 0; a < 3; ++a) total *= static_cast<double>(hi[a] - lo[a] + 1);
    if (total > static_cast<double>(kMaxBboxVoxels)) {
      throw InvalidArgument("find_weak_voxels: bounding box spans too many voxels");
    }
    for (std::int64_t i = lo[0]; i <= hi[0]; ++i) {
      for (std::int64_t j = lo[1]; j <= hi[1]; ++j) {
        for (std::int64_t k = lo[2]; k <= hi[2]; ++k) {
          const VoxelIndex idx{i, j, k};
          const std::size_t n = grid.count(idx);
          if (n < options.threshold) out.voxels.push_back({idx, grid.center_of(idx), n});
        }
      }
    }
    return out;  // already in index order
  }

  for (const auto& [idx, n] : grid.counts()) {
    if (n < options.threshold) out.voxels.push_back({idx, grid.center_of(idx), n});
  }
  std::sort(out.voxels.begin(), out.voxels.end(),
            [](const WeakVoxel& a, const WeakVoxel& b) { return a.index < b.index; });
  return out;
}

std::vector<std::size_t> visible_weak_voxels(const CandidateImage& img, const WeakVoxelSet& weak,
                                             const std::optional<DepthBand>& band) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < weak.voxels.size(); ++i) {
    const Vec3& c = weak.voxels[i].center;
    if (!img.camera.sees(c)) continue;
    if (band) {
      const double z = img.camera.to_camera(c).z();
      if (z < band->min_depth || z > band->max_depth) continue;
    }
    out.push_back(i);
  }
  return out;
}

std::size_t score_image(const CandidateImage& img, const WeakVoxelSet& weak, const std::optional<DepthBand>& band) {
  return visible_weak_voxels(img, weak, band).size();
}

SelectionResult greedy_select_sets(const std::vector<std::string>& ids,
                                   const std::vector<std::vector<std::size_t>>& coverage, std::size_t total_weak,
                                   std::optional<std::size_t> budget) {
  if (ids.size() != coverage.size()) throw InvalidArgument("greedy_select: ids and coverage sets differ in size");
  for (const auto& set : coverage) {
    for (std::size_t v : set) {
      if (v >= total_weak) throw InvalidArgument("greedy_select: coverage index out of range");
    }
  }

  SelectionResult result;
  result.total_weak = total_weak;
  const std::size_t limit = budget.value_or(ids.size());

  // Lazy greedy: entries carry an upper bound on the current gain.
  struct Entry {
    std::size_t bound;
    std::size_t candidate;
  };
  auto worse = [&](const Entry& a, const Entry& b) {
    if (a.bound != b.bound) return a.bound < b.bound;
    return std::tie(ids[a.candidate], a.candidate) > std::tie(ids[b.candidate], b.candidate);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
  for (std::size_t c = 0; c < ids.size(); ++c) heap.push({coverage[c].size(), c});

  std::vector<bool> covered(total_weak, false);
  auto gain_of = [&](std::size_t c) {
    std::size_t g = 0;
    for (std::size_t v : coverage[c]) g += covered[v] ? 0 : 1;
    return g;
  };

  while (result.selected.size() < limit && !heap.empty()) {
    Entry top = heap.top();
    heap.pop();
    top.bound = gain_of(top.candidate);
    if (!heap.empty() && worse(top, heap.top())) {
      heap.push(top);
      continue;
    }
    if (top.bound == 0) break;
    for (std::size_t v : coverage[top.candidate]) covered[v] = true;
    result.selected.push_back(ids[top.candidate]);
    result.marginal_gains.push_back(top.bound);
    result.covered += top.bound;
    result.coverage_curve.push_back(static_cast<double>(result.covered) / static_cast<double>(total_weak));
  }
  return result;
}

SelectionResult greedy_select(const std::vector<CandidateImage>& candidates, const WeakVoxelSet& weak,
                              const SelectionOptions& options) {
  if (candidates.empty()) throw InvalidArgument("greedy_select: no candidate images");
  std::vector<std::vector<std::size_t>> coverage(candidates.size());
  parallel_for(candidates.size(),
               [&](std::size_t c) { coverage[c] = visible_weak_voxels(candidates[c], weak, options.depth_band); });
  std::vector<std::string> ids;
  ids.reserve(candidates.size());
  for (const auto& c : candidates) ids.push_back(c.id);
  return greedy_select_sets(ids, coverage, weak.size(), options.budget);
}

std::vector<CandidateImage> candidates_from_colmap(const io::ColmapSparseModel& model) {
  std::vector<CandidateImage> out;
  out.reserve(model.images.size());
  for (const auto& [id, image] : model.images) out.push_back({image.name, model.pinhole(id)});
  return out;
}

}  // namespace baltic

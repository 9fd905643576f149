#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "baltic/geometry.hpp"

namespace baltic {

struct PosePair {
  std::size_t est = 0;
  std::size_t gt = 0;
  friend bool operator==(const PosePair&, const PosePair&) = default;
};

/// Timestamp association. Candidate pairs with |dt| <= max_dt are accepted
/// greedily by ascending |dt| (ties: lower gt index, then lower est index);
/// each pose is used at most once. Result is ordered by est index.
/// Throws InvalidArgument("no temporal overlap") when nothing matches.
std::vector<PosePair> associate(const Trajectory& est, const Trajectory& gt, double max_dt);

/// Half the median inter-frame interval of `traj` (infinity for a single pose).
double default_max_dt(const Trajectory& traj);

enum class AlignmentMode { kSim3, kSe3 };

struct AteResult {
  double rmse = 0.0;
  double mean = 0.0;
  double median = 0.0;
  double max = 0.0;
  std::vector<double> per_frame_errors;
  std::vector<PosePair> pairs;
  SimilarityTransform alignment;
};

/// Absolute trajectory error after aligning est positions onto gt with Umeyama.
AteResult ate(const Trajectory& est, const Trajectory& gt, AlignmentMode mode, double max_dt);

struct RelativeError {
  double translation = 0.0;
  double rotation_rad = 0.0;
};

struct RpeResult {
  double mean_trans = 0.0;
  double mean_rot = 0.0;
  std::vector<RelativeError> per_pair_errors;
  int delta = 1;
};

/// Relative pose error over associated pairs i and i + delta:
/// E_i = (gt_i^-1 gt_{i+delta})^-1 (est_i^-1 est_{i+delta}).
RpeResult rpe(const Trajectory& est, const Trajectory& gt, int delta, double max_dt);

/// Applies a similarity to every pose: positions map through T, orientations
/// are pre-multiplied by its rotation.
Trajectory transformed(const Trajectory& traj, const SimilarityTransform& t);

}  // namespace baltic

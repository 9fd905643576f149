#include "baltic/trajectory_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "baltic/alignment.hpp"
#include "baltic/error.hpp"
#include "baltic/numeric.hpp"

namespace baltic {

std::vector<PosePair> associate(const Trajectory& est, const Trajectory& gt, double max_dt) {
  if (!(max_dt > 0.0)) throw InvalidArgument("associate: max_dt must be positive");

  struct Candidate {
    double dt;
    std::size_t gt;
    std::size_t est;
  };
  std::vector<Candidate> candidates;
  const auto gt_poses = gt.poses();
  for (std::size_t i = 0; i < est.size(); ++i) {
    const double t = est[i].t;
    auto it = std::lower_bound(gt_poses.begin(), gt_poses.end(), t - max_dt,
                               [](const TimedPose& p, double v) { return p.t < v; });
    for (; it != gt_poses.end() && it->t <= t + max_dt; ++it) {
      const double dt = std::abs(it->t - t);
      if (dt <= max_dt) candidates.push_back({dt, static_cast<std::size_t>(it - gt_poses.begin()), i});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.dt, a.gt, a.est) < std::tie(b.dt, b.gt, b.est);
  });

  std::vector<bool> est_used(est.size(), false), gt_used(gt.size(), false);
  std::vector<PosePair> pairs;
  for (const auto& c : candidates) {
    if (est_used[c.est] || gt_used[c.gt]) continue;
    est_used[c.est] = gt_used[c.gt] = true;
    pairs.push_back({c.est, c.gt});
  }
  if (pairs.empty()) throw InvalidArgument("no temporal overlap");
  std::sort(pairs.begin(), pairs.end(), [](const PosePair& a, const PosePair& b) { return a.est < b.est; });
  return pairs;
}

double default_max_dt(const Trajectory& traj) {
  if (traj.size() < 2) return std::numeric_limits<double>::infinity();
  std::vector<double> dt;
  dt.reserve(traj.size() - 1);
  for (std::size_t i = 1; i < traj.size(); ++i) dt.push_back(traj[i].t - traj[i - 1].t);
  const auto mid = dt.begin() + static_cast<std::ptrdiff_t>(dt.size() / 2);
  std::nth_element(dt.begin(), mid, dt.end());
  double median = *mid;
  if (dt.size() % 2 == 0) median = 0.5 * (median + *std::max_element(dt.begin(), mid));
  return 0.5 * median;
}

AteResult ate(const Trajectory& est, const Trajectory& gt, AlignmentMode mode, double max_dt) {
  AteResult r;
  r.pairs = associate(est, gt, max_dt);
  if (r.pairs.size() < 3) {
    throw InvalidArgument("ATE needs at least 3 associated poses, got " + std::to_string(r.pairs.size()));
  }
  std::vector<Vec3> src, dst;
  src.reserve(r.pairs.size());
  dst.reserve(r.pairs.size());
  for (const auto& p : r.pairs) {
    src.push_back(est[p.est].position);
    dst.push_back(gt[p.gt].position);
  }
  r.alignment = umeyama_align(src, dst, mode == AlignmentMode::kSim3);

  r.per_frame_errors.reserve(src.size());
  CompensatedSum sum, sq;
  for (std::size_t i = 0; i < src.size(); ++i) {
    const double e = (dst[i] - r.alignment.apply(src[i])).norm();
    r.per_frame_errors.push_back(e);
    sum.add(e);
    sq.add(e * e);
  }
  const double n = static_cast<double>(src.size());
  r.mean = sum.value() / n;
  r.rmse = std::sqrt(sq.value() / n);

  std::vector<double> sorted = r.per_frame_errors;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  r.median = m % 2 == 1 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  r.max = sorted.back();
  return r;
}

RpeResult rpe(const Trajectory& est, const Trajectory& gt, int delta, double max_dt) {
  if (delta < 1) throw InvalidArgument("RPE delta must be at least 1");
  const auto pairs = associate(est, gt, max_dt);
  const auto d = static_cast<std::size_t>(delta);
  if (pairs.size() < d + 1) {
    throw InvalidArgument("RPE with delta " + std::to_string(delta) + " needs at least " + std::to_string(d + 1) +
                          " associated poses, got " + std::to_string(pairs.size()));
  }

  RpeResult r;
  r.delta = delta;
  r.per_pair_errors.reserve(pairs.size() - d);
  CompensatedSum trans, rot;
  for (std::size_t i = 0; i + d < pairs.size(); ++i) {
    const RigidTransform gt_rel = gt[pairs[i].gt].as_rigid().inverse() * gt[pairs[i + d].gt].as_rigid();
    const RigidTransform est_rel = est[pairs[i].est].as_rigid().inverse() * est[pairs[i + d].est].as_rigid();
    const RigidTransform err = gt_rel.inverse() * est_rel;
    const RelativeError e{err.translation.norm(), err.rotation.angle()};
    r.per_pair_errors.push_back(e);
    trans.add(e.translation);
    rot.add(e.rotation_rad);
  }
  const double n = static_cast<double>(r.per_pair_errors.size());
  r.mean_trans = trans.value() / n;
  r.mean_rot = rot.value() / n;
  return r;
}

Trajectory transformed(const Trajectory& traj, const SimilarityTransform& t) {
  std::vector<TimedPose> poses;
  poses.reserve(traj.size());
  for (const auto& p : traj) poses.push_back({p.t, t.apply(p.position), t.rotation() * p.orientation});
  return Trajectory(std::move(poses));
}

}  // namespace baltic

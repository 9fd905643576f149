#include "baltic/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "baltic/error.hpp"
#include "baltic/numeric.hpp"

namespace baltic {

namespace {

constexpr std::uint32_t kLeafSize = 8;

struct Candidate {
  double d2;
  std::size_t index;
  bool operator<(const Candidate& o) const { return d2 < o.d2 || (d2 == o.d2 && index < o.index); }
};

// Keeps the k best candidates in ascending (d2, index) order.
class KBest {
 public:
  KBest(std::size_t k, std::size_t excluded) : k_(k), excluded_(excluded) { best_.reserve(k + 1); }

  double bound() const {
    return best_.size() < k_ ? std::numeric_limits<double>::infinity() : best_.back().d2;
  }

  void offer(double d2, std::size_t index) {
    if (index == excluded_) return;
    const Candidate c{d2, index};
    if (best_.size() == k_ && !(c < best_.back())) return;
    best_.insert(std::upper_bound(best_.begin(), best_.end(), c), c);
    if (best_.size() > k_) best_.pop_back();
  }

  const std::vector<Candidate>& result() const { return best_; }

 private:
  std::size_t k_;
  std::size_t excluded_;
  std::vector<Candidate> best_;
};

}  // namespace

SpatialIndex::SpatialIndex(std::span<const Vec3> points) : points_(points.begin(), points.end()) {
  if (points_.size() >= std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidArgument("spatial index supports fewer than 2^32 points");
  }
  order_.resize(points_.size());
  std::iota(order_.begin(), order_.end(), 0u);
  if (!points_.empty()) {
    nodes_.reserve(2 * points_.size() / kLeafSize + 1);
    build(0, static_cast<std::uint32_t>(points_.size()), 0);
  }
}

std::uint32_t SpatialIndex::build(std::uint32_t begin, std::uint32_t end, int depth) {
  const auto id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back(Node{-1, 0.0, begin, end, 0, 0});
  if (end - begin <= kLeafSize) return id;

  Vec3 lo = points_[order_[begin]];
  Vec3 hi = lo;
  for (std::uint32_t i = begin; i < end; ++i) {
    lo = lo.cwiseMin(points_[order_[i]]);
    hi = hi.cwiseMax(points_[order_[i]]);
  }
  int axis = 0;
  (hi - lo).maxCoeff(&axis);
  if (hi[axis] == lo[axis]) return id;  // all points coincide

  const std::uint32_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](std::uint32_t a, std::uint32_t b) { return points_[a][axis] < points_[b][axis]; });
  const double split = points_[order_[mid]][axis];

  const std::uint32_t left = build(begin, mid, depth + 1);
  const std::uint32_t right = build(mid, end, depth + 1);
  nodes_[id].axis = axis;
  nodes_[id].split = split;
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

template <typename Visitor>
void SpatialIndex::search(std::uint32_t node_id, const Vec3& q, Visitor& visitor) const {
  const Node& node = nodes_[node_id];
  if (node.axis < 0) {
    for (std::uint32_t i = node.begin; i < node.end; ++i) {
      const std::uint32_t idx = order_[i];
      visitor.offer((points_[idx] - q).squaredNorm(), idx);
    }
    return;
  }
  const double diff = q[node.axis] - node.split;
  const std::uint32_t near = diff < 0.0 ? node.left : node.right;
  const std::uint32_t far = diff < 0.0 ? node.right : node.left;
  search(near, q, visitor);
  // Non-strict so equidistant points with a lower index are still visited.
  if (diff * diff <= visitor.bound()) search(far, q, visitor);
}

std::vector<Neighbor> SpatialIndex::k_nearest(const Vec3& query, std::size_t k, std::size_t excluded) const {
  std::vector<Neighbor> out;
  if (k == 0 || points_.empty()) return out;
  KBest best(k, excluded);
  search(0, query, best);
  out.reserve(best.result().size());
  for (const auto& c : best.result()) out.push_back({c.index, std::sqrt(c.d2)});
  return out;
}

Neighbor SpatialIndex::nearest(const Vec3& query) const {
  if (points_.empty()) throw InvalidArgument("nearest-neighbor query on an empty index");
  return k_nearest(query, 1).front();
}

Neighbor SpatialIndex::nearest_other(const Vec3& query, std::size_t excluded) const {
  if (points_.size() < 2) throw InvalidArgument("nearest_other requires at least two indexed points");
  return k_nearest(query, 1, excluded).front();
}

double mean_nearest_other_distance(const SpatialIndex& index) {
  if (index.size() < 2) throw InvalidArgument("mean nearest-neighbor distance requires at least two points");
  std::vector<double> d(index.size());
  parallel_for(index.size(), [&](std::size_t i) { d[i] = index.nearest_other(index.point(i), i).distance; });
  return compensated_mean(d);
}

Neighbor nearest_linear_scan(std::span<const Vec3> points, const Vec3& query) {
  if (points.empty()) throw InvalidArgument("nearest-neighbor query on an empty point set");
  Candidate best{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Candidate c{(points[i] - query).squaredNorm(), i};
    if (c < best) best = c;
  }
  return {best.index, std::sqrt(best.d2)};
}

}  // namespace baltic

#include "baltic/geometry.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "baltic/error.hpp"
#include "baltic/numeric.hpp"

namespace baltic {

bool is_finite(const Vec3& v) {
  return std::isfinite(v.x()) && std::isfinite(v.y()) && std::isfinite(v.z());
}

UnitQuaternion::UnitQuaternion(double w, double x, double y, double z) {
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  if (!std::isfinite(n) || n == 0.0) {
    throw InvalidArgument("quaternion must be finite and non-zero");
  }
  if (w < 0.0) {
    w = -w;
    x = -x;
    y = -y;
    z = -z;
  }
  // Skipping near-unit inputs makes normalization idempotent, so re-reading a
  // written quaternion reproduces it bit for bit.
  if (std::abs(n - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon()) {
    w_ = w, x_ = x, y_ = y, z_ = z;
  } else {
    w_ = w / n, x_ = x / n, y_ = y / n, z_ = z / n;
  }
}

UnitQuaternion::UnitQuaternion(const Eigen::Quaterniond& q) : UnitQuaternion(q.w(), q.x(), q.y(), q.z()) {}

UnitQuaternion UnitQuaternion::from_matrix(const Mat3& r) { return UnitQuaternion(Eigen::Quaterniond(r)); }

UnitQuaternion UnitQuaternion::from_axis_angle(const Vec3& axis, double angle_rad) {
  const double n = axis.norm();
  if (n == 0.0) {
    throw InvalidArgument("rotation axis must be non-zero");
  }
  return UnitQuaternion(Eigen::Quaterniond(Eigen::AngleAxisd(angle_rad, axis / n)));
}

UnitQuaternion UnitQuaternion::operator*(const UnitQuaternion& rhs) const {
  return UnitQuaternion(to_eigen() * rhs.to_eigen());
}

double UnitQuaternion::angle() const {
  const double v = std::sqrt(x_ * x_ + y_ * y_ + z_ * z_);
  return 2.0 * std::atan2(v, std::abs(w_));
}

RigidTransform RigidTransform::inverse() const {
  const UnitQuaternion inv = rotation.inverse();
  return {inv, -inv.rotate(translation)};
}

RigidTransform RigidTransform::operator*(const RigidTransform& rhs) const {
  return {rotation * rhs.rotation, rotation.rotate(rhs.translation) + translation};
}

Trajectory::Trajectory(std::vector<TimedPose> poses) : poses_(std::move(poses)) {
  if (poses_.empty()) {
    throw InvalidArgument("trajectory must contain at least one pose");
  }
  for (std::size_t i = 0; i < poses_.size(); ++i) {
    if (!std::isfinite(poses_[i].t) || !is_finite(poses_[i].position)) {
      throw InvalidArgument("non-finite pose at index " + std::to_string(i));
    }
    if (i > 0 && !(poses_[i].t > poses_[i - 1].t)) {
      throw InvalidArgument("timestamps must be strictly increasing (index " + std::to_string(i) + ")");
    }
  }
}

std::vector<Vec3> Trajectory::positions() const {
  std::vector<Vec3> out;
  out.reserve(poses_.size());
  for (const auto& p : poses_) out.push_back(p.position);
  return out;
}

SimilarityTransform::SimilarityTransform(double scale, UnitQuaternion rotation, Vec3 translation)
    : scale_(scale), rotation_(rotation), translation_(std::move(translation)) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw InvalidArgument("similarity scale must be positive and finite");
  }
  if (!is_finite(translation_)) {
    throw InvalidArgument("similarity translation must be finite");
  }
}

SimilarityTransform SimilarityTransform::inverse() const {
  const UnitQuaternion inv = rotation_.inverse();
  const double s = 1.0 / scale_;
  return {s, inv, -s * inv.rotate(translation_)};
}

SimilarityTransform SimilarityTransform::operator*(const SimilarityTransform& rhs) const {
  return {scale_ * rhs.scale_, rotation_ * rhs.rotation_, scale_ * rotation_.rotate(rhs.translation_) + translation_};
}

Mat4 SimilarityTransform::matrix() const {
  Mat4 m = Mat4::Identity();
  m.topLeftCorner<3, 3>() = scale_ * rotation_.matrix();
  m.topRightCorner<3, 1>() = translation_;
  return m;
}

void PointCloud::validate() const {
  if (!colors.empty() && colors.size() != points.size()) {
    throw InvalidArgument("point cloud has " + std::to_string(colors.size()) + " colors for " +
                          std::to_string(points.size()) + " points");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!is_finite(points[i])) {
      throw InvalidArgument("non-finite point at index " + std::to_string(i));
    }
  }
}

void TriangleMesh::validate() const {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (!is_finite(vertices[i])) {
      throw InvalidArgument("non-finite vertex at index " + std::to_string(i));
    }
  }
  for (std::size_t f = 0; f < triangles.size(); ++f) {
    for (auto idx : triangles[f]) {
      if (idx >= vertices.size()) {
        throw InvalidArgument("triangle " + std::to_string(f) + " references vertex " + std::to_string(idx) +
                              " of " + std::to_string(vertices.size()));
      }
    }
  }
}

Aabb bounding_box(std::span<const Vec3> points) {
  if (points.empty()) {
    throw InvalidArgument("bounding box of an empty point set");
  }
  Aabb box{points.front(), points.front()};
  for (const auto& p : points) {
    box.min = box.min.cwiseMin(p);
    box.max = box.max.cwiseMax(p);
  }
  return box;
}

Vec3 centroid(std::span<const Vec3> points) {
  if (points.empty()) {
    throw InvalidArgument("centroid of an empty point set");
  }
  CompensatedSum sx, sy, sz;
  for (const auto& p : points) {
    sx.add(p.x());
    sy.add(p.y());
    sz.add(p.z());
  }
  const double n = static_cast<double>(points.size());
  return {sx.value() / n, sy.value() / n, sz.value() / n};
}

PointCloud transformed(const PointCloud& cloud, const SimilarityTransform& t) {
  PointCloud out;
  out.colors = cloud.colors;
  out.points.reserve(cloud.points.size());
  for (const auto& p : cloud.points) out.points.push_back(t.apply(p));
  return out;
}

}  // namespace baltic

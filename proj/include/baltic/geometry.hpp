#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace baltic {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

bool is_finite(const Vec3& v);

/// Hamilton unit quaternion stored as (w, x, y, z), canonicalized to w >= 0.
class UnitQuaternion {
 public:
  UnitQuaternion() = default;

  /// Normalizes the input; throws InvalidArgument for a zero or non-finite quaternion.
  UnitQuaternion(double w, double x, double y, double z);
  explicit UnitQuaternion(const Eigen::Quaterniond& q);

  static UnitQuaternion identity() { return {}; }
  static UnitQuaternion from_matrix(const Mat3& r);
  static UnitQuaternion from_axis_angle(const Vec3& axis, double angle_rad);

  double w() const { return w_; }
  double x() const { return x_; }
  double y() const { return y_; }
  double z() const { return z_; }

  Eigen::Quaterniond to_eigen() const { return {w_, x_, y_, z_}; }
  Mat3 matrix() const { return to_eigen().toRotationMatrix(); }
  Vec3 rotate(const Vec3& v) const { return to_eigen() * v; }

  UnitQuaternion inverse() const { return {w_, -x_, -y_, -z_}; }
  UnitQuaternion operator*(const UnitQuaternion& rhs) const;

  /// Rotation angle in [0, pi].
  double angle() const;

  friend bool operator==(const UnitQuaternion&, const UnitQuaternion&) = default;

 private:
  double w_ = 1.0, x_ = 0.0, y_ = 0.0, z_ = 0.0;
};

/// Rigid motion x -> R x + t.
struct RigidTransform {
  UnitQuaternion rotation;
  Vec3 translation = Vec3::Zero();

  Vec3 apply(const Vec3& p) const { return rotation.rotate(p) + translation; }
  RigidTransform inverse() const;
  RigidTransform operator*(const RigidTransform& rhs) const;
};

struct TimedPose {
  double t = 0.0;
  Vec3 position = Vec3::Zero();
  UnitQuaternion orientation;

  /// Camera-to-world motion described by this pose.
  RigidTransform as_rigid() const { return {orientation, position}; }
};

/// Non-empty sequence of poses with strictly increasing timestamps.
class Trajectory {
 public:
  explicit Trajectory(std::vector<TimedPose> poses);

  std::size_t size() const { return poses_.size(); }
  const TimedPose& operator[](std::size_t i) const { return poses_[i]; }
  std::span<const TimedPose> poses() const { return poses_; }
  auto begin() const { return poses_.begin(); }
  auto end() const { return poses_.end(); }

  std::vector<Vec3> positions() const;

 private:
  std::vector<TimedPose> poses_;
};

/// x -> scale * R x + t with scale > 0.
class SimilarityTransform {
 public:
  SimilarityTransform() = default;
  SimilarityTransform(double scale, UnitQuaternion rotation, Vec3 translation);

  static SimilarityTransform identity() { return {}; }
  static SimilarityTransform rigid(UnitQuaternion rotation, Vec3 translation) {
    return {1.0, rotation, std::move(translation)};
  }

  double scale() const { return scale_; }
  const UnitQuaternion& rotation() const { return rotation_; }
  const Vec3& translation() const { return translation_; }

  Vec3 apply(const Vec3& p) const { return scale_ * rotation_.rotate(p) + translation_; }
  SimilarityTransform inverse() const;
  /// (a * b)(p) == a(b(p)).
  SimilarityTransform operator*(const SimilarityTransform& rhs) const;
  Mat4 matrix() const;

 private:
  double scale_ = 1.0;
  UnitQuaternion rotation_;
  Vec3 translation_ = Vec3::Zero();
};

inline Vec3 apply_similarity(const SimilarityTransform& t, const Vec3& p) { return t.apply(p); }

using Rgb8 = std::array<std::uint8_t, 3>;

struct PointCloud {
  std::vector<Vec3> points;
  /// Either empty or one entry per point.
  std::vector<Rgb8> colors;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  bool has_colors() const { return !colors.empty(); }

  /// Throws InvalidArgument on non-finite points or a color/point count mismatch.
  void validate() const;
};

struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;

  /// Throws InvalidArgument on out-of-range indices or non-finite vertices.
  void validate() const;
};

struct Aabb {
  Vec3 min = Vec3::Zero();
  Vec3 max = Vec3::Zero();
};

Aabb bounding_box(std::span<const Vec3> points);
Vec3 centroid(std::span<const Vec3> points);

PointCloud transformed(const PointCloud& cloud, const SimilarityTransform& t);

}  // namespace baltic

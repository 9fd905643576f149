#pragma once

#include <optional>

#include "baltic/geometry.hpp"

namespace baltic {

struct PixelCoord {
  double u = 0.0;
  double v = 0.0;
};

/// Undistorted pinhole camera. `world_to_camera` maps world points into the
/// camera frame (+z forward).
class CameraPinhole {
 public:
  /// Throws InvalidArgument unless fx, fy > 0 and the principal point lies
  /// strictly inside the image.
  CameraPinhole(double fx, double fy, double cx, double cy, int width, int height,
                RigidTransform world_to_camera = {});

  double fx() const { return fx_; }
  double fy() const { return fy_; }
  double cx() const { return cx_; }
  double cy() const { return cy_; }
  int width() const { return width_; }
  int height() const { return height_; }
  const RigidTransform& world_to_camera() const { return pose_; }

  Vec3 to_camera(const Vec3& world) const { return pose_.apply(world); }

  /// Pixel coordinates for points with positive depth, nullopt otherwise.
  std::optional<PixelCoord> project(const Vec3& world) const;

  /// True iff the point has positive depth and projects into [0,width) x [0,height).
  bool sees(const Vec3& world) const;

 private:
  double fx_, fy_, cx_, cy_;
  int width_, height_;
  RigidTransform pose_;
};

}  // namespace baltic

#include "baltic/camera.hpp"

#include <cmath>

#include "baltic/error.hpp"

namespace baltic {

CameraPinhole::CameraPinhole(double fx, double fy, double cx, double cy, int width, int height,
                             RigidTransform world_to_camera)
    : fx_(fx), fy_(fy), cx_(cx), cy_(cy), width_(width), height_(height), pose_(world_to_camera) {
  if (!(fx > 0.0) || !(fy > 0.0) || !std::isfinite(fx) || !std::isfinite(fy)) {
    throw InvalidArgument("camera focal lengths must be positive");
  }
  if (width <= 0 || height <= 0) throw InvalidArgument("camera image size must be positive");
  if (!(cx > 0.0 && cx < width) || !(cy > 0.0 && cy < height)) {
    throw InvalidArgument("camera principal point must lie inside the image");
  }
  if (!is_finite(pose_.translation)) throw InvalidArgument("camera translation must be finite");
}

std::optional<PixelCoord> CameraPinhole::project(const Vec3& world) const {
  const Vec3 pc = to_camera(world);
  if (!(pc.z() > 0.0)) return std::nullopt;
  return PixelCoord{fx_ * pc.x() / pc.z() + cx_, fy_ * pc.y() / pc.z() + cy_};
}

bool CameraPinhole::sees(const Vec3& world) const {
  const auto px = project(world);
  return px && px->u >= 0.0 && px->u < width_ && px->v >= 0.0 && px->v < height_;
}

}  // namespace baltic

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "baltic/camera.hpp"
#include "baltic/geometry.hpp"
#include "baltic/image.hpp"

namespace baltic::io {

// ---------------------------------------------------------------------------
// Trajectories
// ---------------------------------------------------------------------------

/// Order of the four quaternion fields after "t tx ty tz" on each line.
enum class QuaternionOrder { kXyzw, kWxyz };

/// Parses "t tx ty tz qx qy qz qw" lines ('#' starts a comment line).
///
/// Quaternions whose norm lies in [0.99, 1.01] are renormalized; anything else
/// is rejected. Errors name the 1-based line number.
Trajectory parse_trajectory_text(std::string_view text, QuaternionOrder order = QuaternionOrder::kXyzw);
Trajectory parse_trajectory(const std::filesystem::path& path, QuaternionOrder order = QuaternionOrder::kXyzw);

/// Ground-truth tracker export (E*_tf.txt). Same grammar as parse_trajectory.
Trajectory parse_groundtruth_tf_text(std::string_view text, QuaternionOrder order = QuaternionOrder::kXyzw);
Trajectory parse_groundtruth_tf(const std::filesystem::path& path, QuaternionOrder order = QuaternionOrder::kXyzw);

std::string format_trajectory(const Trajectory& traj, QuaternionOrder order = QuaternionOrder::kXyzw);
void write_trajectory(const Trajectory& traj, const std::filesystem::path& path,
                      QuaternionOrder order = QuaternionOrder::kXyzw);

// ---------------------------------------------------------------------------
// COLMAP text models
// ---------------------------------------------------------------------------

enum class ColmapCameraModel { kSimplePinhole, kPinhole };

struct ColmapCamera {
  ColmapCameraModel model = ColmapCameraModel::kPinhole;
  int width = 0;
  int height = 0;
  /// SIMPLE_PINHOLE: f, cx, cy. PINHOLE: fx, fy, cx, cy.
  std::vector<double> params;

  double fx() const { return params[0]; }
  double fy() const { return model == ColmapCameraModel::kPinhole ? params[1] : params[0]; }
  double cx() const { return model == ColmapCameraModel::kPinhole ? params[2] : params[1]; }
  double cy() const { return model == ColmapCameraModel::kPinhole ? params[3] : params[2]; }

  friend bool operator==(const ColmapCamera&, const ColmapCamera&) = default;
};

struct ColmapPoint2D {
  double x = 0.0;
  double y = 0.0;
  /// -1 when the observation is not triangulated.
  std::int64_t point3d_id = -1;

  friend bool operator==(const ColmapPoint2D&, const ColmapPoint2D&) = default;
};

struct ColmapImage {
  std::string name;
  std::uint32_t camera_id = 0;
  /// World-to-camera rotation and translation, as stored in images.txt.
  UnitQuaternion rotation;
  Vec3 translation = Vec3::Zero();
  std::vector<ColmapPoint2D> points2d;

  RigidTransform world_to_camera() const { return {rotation, translation}; }
  /// Camera center in world coordinates.
  Vec3 center() const { return world_to_camera().inverse().translation; }

  friend bool operator==(const ColmapImage&, const ColmapImage&) = default;
};

struct ColmapTrackElement {
  std::uint32_t image_id = 0;
  std::uint32_t point2d_idx = 0;

  friend bool operator==(const ColmapTrackElement&, const ColmapTrackElement&) = default;
};

struct ColmapPoint3D {
  Vec3 xyz = Vec3::Zero();
  Rgb8 color{};
  double error = 0.0;
  std::vector<ColmapTrackElement> track;

  friend bool operator==(const ColmapPoint3D&, const ColmapPoint3D&) = default;
};

struct ColmapSparseModel {
  std::map<std::uint32_t, ColmapCamera> cameras;
  std::map<std::uint32_t, ColmapImage> images;
  std::map<std::uint64_t, ColmapPoint3D> points3d;

  /// Pinhole camera (intrinsics + pose) for a registered image.
  CameraPinhole pinhole(std::uint32_t image_id) const;
  PointCloud point_cloud() const;
  std::size_t observation_count() const;

  friend bool operator==(const ColmapSparseModel&, const ColmapSparseModel&) = default;
};

/// Parses the three COLMAP text files from their contents.
ColmapSparseModel parse_colmap_text(std::string_view cameras_txt, std::string_view images_txt,
                                    std::string_view points3d_txt);
/// Reads cameras.txt, images.txt and points3D.txt from `dir`.
ColmapSparseModel parse_colmap_text(const std::filesystem::path& dir);

struct ColmapTextFiles {
  std::string cameras;
  std::string images;
  std::string points3d;
};
ColmapTextFiles format_colmap_text(const ColmapSparseModel& model);
void write_colmap_text(const ColmapSparseModel& model, const std::filesystem::path& dir);

// ---------------------------------------------------------------------------
// PLY
// ---------------------------------------------------------------------------

using Geometry = std::variant<PointCloud, TriangleMesh>;

/// ASCII or binary_little_endian PLY. Returns a mesh iff a face element exists.
Geometry read_ply_bytes(std::span<const std::uint8_t> bytes);
Geometry read_ply(const std::filesystem::path& path);

/// Convenience wrappers; a mesh read as a cloud yields its vertices.
PointCloud read_ply_cloud(const std::filesystem::path& path);
TriangleMesh read_ply_mesh(const std::filesystem::path& path);

enum class PlyEncoding { kAscii, kBinaryLittleEndian };

std::vector<std::uint8_t> format_ply(const PointCloud& cloud, PlyEncoding encoding = PlyEncoding::kBinaryLittleEndian);
std::vector<std::uint8_t> format_ply(const TriangleMesh& mesh, PlyEncoding encoding = PlyEncoding::kBinaryLittleEndian);
void write_ply(const PointCloud& cloud, const std::filesystem::path& path,
               PlyEncoding encoding = PlyEncoding::kBinaryLittleEndian);
void write_ply(const TriangleMesh& mesh, const std::filesystem::path& path,
               PlyEncoding encoding = PlyEncoding::kBinaryLittleEndian);

// ---------------------------------------------------------------------------
// PNG
// ---------------------------------------------------------------------------

/// 8-bit gray or RGB without alpha; other formats are rejected.
Image8 read_png_bytes(std::span<const std::uint8_t> bytes);
Image8 read_png(const std::filesystem::path& path);
std::vector<std::uint8_t> encode_png(const Image8& img);
void write_png(const Image8& img, const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Exposure sidecar
// ---------------------------------------------------------------------------

struct ExposureRecord {
  std::string name;
  double exposure = 0.0;

  friend bool operator==(const ExposureRecord&, const ExposureRecord&) = default;
};

/// CSV with a header containing "name" and "exposure" columns.
std::vector<ExposureRecord> parse_exposure_csv_text(std::string_view text);
std::vector<ExposureRecord> parse_exposure_csv(const std::filesystem::path& path);
std::string format_exposure_csv(std::span<const ExposureRecord> records);

// ---------------------------------------------------------------------------

std::string read_text_file(const std::filesystem::path& path);
std::vector<std::uint8_t> read_binary_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);
void write_binary_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace baltic::io

#pragma once

#include <cstddef>

#include "baltic/geometry.hpp"

namespace baltic {

/// Point-cloud comparison metrics in the units reported by the toolkit.
struct CloudMetrics {
  double chamfer_rms_mm = 0.0;
  double mean_nn_distance_mm = 0.0;
  /// Mean squared deviation from local best-fit planes, m^2.
  double surface_roughness = 0.0;
};

struct MeshStats {
  std::size_t triangles = 0;
  double surface_area_cm2 = 0.0;
  double avg_curvature_per_cm = 0.0;
  /// Zero-area triangles, excluded from curvature.
  std::size_t degenerate_triangles = 0;
  /// Vertices contributing to avg_curvature_per_cm (interior, non-isolated).
  std::size_t curvature_vertices = 0;
};

/// Symmetric RMS of nearest-neighbor distances between a and b (inputs in
/// meters, result in millimeters).
double chamfer_rms(const PointCloud& a, const PointCloud& b);

/// Mean distance to the nearest other point, in millimeters.
double mean_nn_distance(const PointCloud& a);

constexpr int kDefaultRoughnessNeighbors = 16;

/// Mean squared distance of each point to the total-least-squares plane of
/// its k nearest other points, in m^2.
double surface_roughness(const PointCloud& a, int k = kDefaultRoughnessNeighbors);

CloudMetrics cloud_metrics(const PointCloud& evaluated, const PointCloud& reference,
                           int k = kDefaultRoughnessNeighbors);

/// Triangle count, area and area-weighted mean |H| over interior vertices.
/// Curvature uses the cotangent mean-curvature normal with mixed Voronoi
/// areas. `unit_scale_to_cm` converts input units to centimeters (100 for meters).
MeshStats mesh_stats(const TriangleMesh& mesh, double unit_scale_to_cm = 100.0);

}  // namespace baltic

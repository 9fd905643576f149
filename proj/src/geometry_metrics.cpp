#include "baltic/geometry_metrics.hpp"

#include <cmath>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Eigenvalues>

#include "baltic/error.hpp"
#include "baltic/numeric.hpp"
#include "baltic/spatial_index.hpp"

namespace baltic {

namespace {

constexpr double kMetersToMm = 1000.0;

// Sum over `from` of squared NN distances into `to_index`, in fixed order.
double sum_squared_nn(const PointCloud& from, const SpatialIndex& to_index) {
  std::vector<double> d2(from.size());
  parallel_for(from.size(), [&](std::size_t i) {
    const double d = to_index.nearest(from.points[i]).distance;
    d2[i] = d * d;
  });
  return compensated_sum(d2);
}

}  // namespace

double chamfer_rms(const PointCloud& a, const PointCloud& b) {
  if (a.empty() || b.empty()) throw InvalidArgument("chamfer_rms: empty point cloud");
  const SpatialIndex ia(a), ib(b);
  CompensatedSum total;
  total.add(sum_squared_nn(a, ib));
  total.add(sum_squared_nn(b, ia));
  return kMetersToMm * std::sqrt(total.value() / static_cast<double>(a.size() + b.size()));
}

double mean_nn_distance(const PointCloud& a) {
  if (a.size() < 2) throw InvalidArgument("mean_nn_distance: need at least 2 points");
  return kMetersToMm * mean_nearest_other_distance(SpatialIndex(a));
}

double surface_roughness(const PointCloud& a, int k) {
  if (k < 3) throw InvalidArgument("surface_roughness: k must be at least 3");
  if (a.size() < static_cast<std::size_t>(k) + 1) {
    throw InvalidArgument("surface_roughness: need at least k+1 = " + std::to_string(k + 1) + " points");
  }
  const SpatialIndex index(a);
  std::vector<double> deviation(a.size());
  parallel_for(a.size(), [&](std::size_t i) {
    const auto nbrs = index.k_nearest(a.points[i], static_cast<std::size_t>(k), i);
    Vec3 c = Vec3::Zero();
    for (const auto& nb : nbrs) c += index.point(nb.index);
    c /= static_cast<double>(nbrs.size());
    Mat3 cov = Mat3::Zero();
    for (const auto& nb : nbrs) {
      const Vec3 d = index.point(nb.index) - c;
      cov.noalias() += d * d.transpose();
    }
    const Eigen::SelfAdjointEigenSolver<Mat3> eig(cov);
    const Vec3 normal = eig.eigenvectors().col(0);
    const double dist = (a.points[i] - c).dot(normal);
    deviation[i] = dist * dist;
  });
  return compensated_mean(deviation);
}

CloudMetrics cloud_metrics(const PointCloud& evaluated, const PointCloud& reference, int k) {
  return {chamfer_rms(evaluated, reference), mean_nn_distance(evaluated), surface_roughness(evaluated, k)};
}

MeshStats mesh_stats(const TriangleMesh& mesh, double unit_scale_to_cm) {
  if (mesh.vertices.empty() || mesh.triangles.empty()) throw InvalidArgument("mesh_stats: empty mesh");
  if (!(unit_scale_to_cm > 0.0) || !std::isfinite(unit_scale_to_cm)) {
    throw InvalidArgument("mesh_stats: unit scale must be positive");
  }
  mesh.validate();

  MeshStats stats;
  stats.triangles = mesh.triangles.size();

  const std::size_t nv = mesh.vertices.size();
  std::vector<Vec3> laplacian(nv, Vec3::Zero());
  std::vector<double> mixed_area(nv, 0.0);
  std::unordered_map<std::uint64_t, int> edge_use;
  auto edge_key = [](std::uint32_t a, std::uint32_t b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
  };

  CompensatedSum area_sum;
  for (const auto& tri : mesh.triangles) {
    const Vec3* x[3] = {&mesh.vertices[tri[0]], &mesh.vertices[tri[1]], &mesh.vertices[tri[2]]};
    const Vec3 e01 = *x[1] - *x[0], e12 = *x[2] - *x[1], e20 = *x[0] - *x[2];
    const double twice_area = e01.cross(-e20).norm();
    area_sum.add(0.5 * twice_area);

    const double longest2 = std::max({e01.squaredNorm(), e12.squaredNorm(), e20.squaredNorm()});
    if (!(twice_area > 1e-14 * longest2)) {
      ++stats.degenerate_triangles;
      continue;
    }
    const double area = 0.5 * twice_area;

    // Corner c sits opposite the edge (c+1, c+2).
    double cot[3];
    bool obtuse[3];
    for (int c = 0; c < 3; ++c) {
      const Vec3 u = *x[(c + 1) % 3] - *x[c];
      const Vec3 v = *x[(c + 2) % 3] - *x[c];
      const double dot = u.dot(v);
      cot[c] = dot / twice_area;
      obtuse[c] = dot < 0.0;
    }
    for (int c = 0; c < 3; ++c) {
      const std::uint32_t i = tri[(c + 1) % 3], j = tri[(c + 2) % 3];
      const Vec3 d = mesh.vertices[i] - mesh.vertices[j];
      laplacian[i] += cot[c] * d;
      laplacian[j] -= cot[c] * d;
      ++edge_use[edge_key(i, j)];
    }

    const bool any_obtuse = obtuse[0] || obtuse[1] || obtuse[2];
    for (int c = 0; c < 3; ++c) {
      const std::uint32_t p = tri[c];
      if (!any_obtuse) {
        // Voronoi region: edges adjacent to corner c weighted by the opposite cotangents.
        const double len_next = (*x[(c + 1) % 3] - *x[c]).squaredNorm();  // opposite corner c+2
        const double len_prev = (*x[(c + 2) % 3] - *x[c]).squaredNorm();  // opposite corner c+1
        mixed_area[p] += (len_next * cot[(c + 2) % 3] + len_prev * cot[(c + 1) % 3]) / 8.0;
      } else {
        mixed_area[p] += obtuse[c] ? area / 2.0 : area / 4.0;
      }
    }
  }

  std::vector<bool> boundary(nv, false);
  for (const auto& [key, uses] : edge_use) {
    if (uses == 1) {
      boundary[key >> 32] = true;
      boundary[key & 0xffffffffULL] = true;
    }
  }

  CompensatedSum weighted_h, weight;
  for (std::size_t v = 0; v < nv; ++v) {
    if (boundary[v] || !(mixed_area[v] > 0.0)) continue;
    const double abs_h = laplacian[v].norm() / (4.0 * mixed_area[v]);
    weighted_h.add(mixed_area[v] * abs_h);
    weight.add(mixed_area[v]);
    ++stats.curvature_vertices;
  }

  stats.surface_area_cm2 = area_sum.value() * unit_scale_to_cm * unit_scale_to_cm;
  stats.avg_curvature_per_cm = stats.curvature_vertices == 0 ? 0.0 : weighted_h.value() / weight.value() / unit_scale_to_cm;
  return stats;
}

}  // namespace baltic

#include "baltic/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "baltic/alignment.hpp"
#include "baltic/cross_domain.hpp"
#include "baltic/error.hpp"
#include "baltic/geometry_metrics.hpp"
#include "baltic/io.hpp"
#include "baltic/radiometry.hpp"
#include "baltic/trajectory_metrics.hpp"
#include "report.hpp"

namespace baltic {

namespace {

namespace fs = std::filesystem;
using cli::format_number;
using cli::Json;
using cli::number;
using cli::Report;

constexpr double kCm = 100.0;

struct Failure {
  int code;
  std::string message;
};

// Runs one pipeline stage, tagging any toolkit error with the stage name.
template <typename F>
auto stage(const std::string& name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const FileError& e) {
    throw Failure{2, name + ": " + e.what()};
  } catch (const fs::filesystem_error& e) {
    throw Failure{2, name + ": " + e.what()};
  } catch (const Error& e) {
    throw Failure{1, name + ": " + e.what()};
  }
}

struct Common {
  std::string out;
  std::string format = "json";
};

void add_common(CLI::App& sub, Common& c) {
  sub.add_option("--out", c.out, "Report path (default: standard output)");
  sub.add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
}

std::vector<std::string> numbers_row(std::initializer_list<double> values) {
  std::vector<std::string> row;
  for (double v : values) row.push_back(format_number(v));
  return row;
}

Json rect_json(const Rect& r) { return Json::array({r.x, r.y, r.width, r.height}); }

Rect to_rect(const std::vector<int>& v) { return {v[0], v[1], v[2], v[3]}; }

// PNG files in `dir`, sorted by file name.
std::vector<std::string> list_pngs(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw FileError("cannot open directory: " + dir.string());
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".png") names.push_back(entry.path().filename().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

// Names present in both directories; unmatched files are reported on `err`.
std::vector<std::string> matched_pngs(const fs::path& a, const fs::path& b, std::ostream& err) {
  const auto na = list_pngs(a), nb = list_pngs(b);
  std::vector<std::string> both;
  std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(both));
  for (const auto& n : na) {
    if (!std::binary_search(nb.begin(), nb.end(), n)) err << "warning: " << (a / n).string() << " has no counterpart\n";
  }
  for (const auto& n : nb) {
    if (!std::binary_search(na.begin(), na.end(), n)) err << "warning: " << (b / n).string() << " has no counterpart\n";
  }
  if (both.empty()) {
    throw InvalidArgument("no PNG files with matching names in " + a.string() + " and " + b.string());
  }
  return both;
}

// ---------------------------------------------------------------------------

struct TrajOptions {
  Common common;
  std::string est, gt;
  std::string mode = "sim3";
  int delta = 1;
  std::optional<double> max_dt;
  std::string quat_order = "xyzw";
};

Report eval_traj(const TrajOptions& o) {
  const auto order = o.quat_order == "wxyz" ? io::QuaternionOrder::kWxyz : io::QuaternionOrder::kXyzw;
  const Trajectory est = stage("reading --est", [&] { return io::parse_trajectory(o.est, order); });
  const Trajectory gt = stage("reading --gt", [&] { return io::parse_groundtruth_tf(o.gt, order); });
  const double max_dt = o.max_dt.value_or(default_max_dt(gt));
  const AlignmentMode mode = o.mode == "se3" ? AlignmentMode::kSe3 : AlignmentMode::kSim3;

  const AteResult a = stage("computing ATE", [&] { return ate(est, gt, mode, max_dt); });
  // Relative motion of a monocular estimate is only meaningful at the aligned scale.
  const Trajectory est_for_rpe = mode == AlignmentMode::kSim3 ? transformed(est, a.alignment) : est;
  const RpeResult r = stage("computing RPE", [&] { return rpe(est_for_rpe, gt, o.delta, max_dt); });
  const double rad_to_deg = 180.0 / std::numbers::pi;

  Report rep;
  rep.command = "eval-traj";
  rep.parameters = {{"est", o.est},           {"gt", o.gt},          {"mode", o.mode},
                    {"delta", o.delta},       {"max_dt", number(max_dt)}, {"quat_order", o.quat_order}};
  const auto& q = a.alignment.rotation();
  const auto& t = a.alignment.translation();
  rep.metrics = {
      {"ate",
       {{"rmse_cm", a.rmse * kCm}, {"mean_cm", a.mean * kCm}, {"median_cm", a.median * kCm}, {"max_cm", a.max * kCm}}},
      {"rpe", {{"mean_trans_cm", r.mean_trans * kCm}, {"mean_rot_deg", r.mean_rot * rad_to_deg}, {"delta", r.delta}}},
      {"alignment",
       {{"scale", a.alignment.scale()},
        {"rotation_wxyz", {q.w(), q.x(), q.y(), q.z()}},
        {"translation", {t.x(), t.y(), t.z()}}}},
      {"associated_poses", a.pairs.size()},
  };
  rep.table.header = {"ate_rmse_cm", "ate_mean_cm", "ate_median_cm", "ate_max_cm",
                      "rpe_mean_trans_cm", "rpe_mean_rot_deg", "rpe_delta", "scale", "associated_poses"};
  rep.table.rows.push_back(numbers_row({a.rmse * kCm, a.mean * kCm, a.median * kCm, a.max * kCm, r.mean_trans * kCm,
                                        r.mean_rot * rad_to_deg, static_cast<double>(r.delta), a.alignment.scale(),
                                        static_cast<double>(a.pairs.size())}));
  return rep;
}

// ---------------------------------------------------------------------------

struct GeomOptions {
  Common common;
  std::string cloud, reference;
  int k = kDefaultRoughnessNeighbors;
  std::optional<double> max_corr;
  int max_iter = 50;
  double eps = 1e-6;
};

Report eval_geom(const GeomOptions& o) {
  const PointCloud cloud = stage("reading --cloud", [&] { return io::read_ply_cloud(o.cloud); });
  const PointCloud ref = stage("reading --reference", [&] { return io::read_ply_cloud(o.reference); });

  const ScaleNormalization norm = stage("scale normalization", [&] { return rms_scale_normalize(cloud, ref); });
  IcpConfig cfg;
  cfg.max_correspondence_dist =
      o.max_corr.value_or(stage("correspondence distance", [&] { return default_correspondence_distance(ref); }));
  cfg.max_iterations = o.max_iter;
  cfg.convergence_eps = o.eps;
  const SimilarityTransform init =
      SimilarityTransform::rigid(UnitQuaternion::identity(), centroid(ref.points) - centroid(norm.scaled.points));
  const IcpResult icp = stage("ICP", [&] { return icp_rigid(norm.scaled, ref, cfg, init); });
  const PointCloud aligned = transformed(norm.scaled, icp.transform);
  const CloudMetrics m = stage("cloud metrics", [&] { return cloud_metrics(aligned, ref, o.k); });

  Report rep;
  rep.command = "eval-geom";
  rep.parameters = {{"cloud", o.cloud},
                    {"reference", o.reference},
                    {"k", o.k},
                    {"max_corr", number(cfg.max_correspondence_dist)},
                    {"max_iter", o.max_iter},
                    {"eps", o.eps}};
  rep.metrics = {{"Scale_RMS", norm.scale},
                 {"ICP_Fitness", icp.fitness},
                 {"ICP_Inlier_RMSE_mm", icp.inlier_rmse * 1000.0},
                 {"ICP_Iterations", icp.iterations},
                 {"Chamfer_RMS_mm", m.chamfer_rms_mm},
                 {"Surface_Roughness", m.surface_roughness},
                 {"Mean_NN_Distance_mm", m.mean_nn_distance_mm}};
  rep.table.header = {"Scale_RMS", "ICP_Fitness", "ICP_Inlier_RMSE_mm", "ICP_Iterations",
                      "Chamfer_RMS_mm", "Surface_Roughness", "Mean_NN_Distance_mm"};
  rep.table.rows.push_back(numbers_row({norm.scale, icp.fitness, icp.inlier_rmse * 1000.0,
                                        static_cast<double>(icp.iterations), m.chamfer_rms_mm, m.surface_roughness,
                                        m.mean_nn_distance_mm}));
  return rep;
}

// ---------------------------------------------------------------------------

struct MeshOptions {
  Common common;
  std::string mesh;
  double unit_scale = 100.0;
};

Report eval_mesh(const MeshOptions& o) {
  const TriangleMesh mesh = stage("reading --mesh", [&] { return io::read_ply_mesh(o.mesh); });
  const MeshStats s = stage("mesh statistics", [&] { return mesh_stats(mesh, o.unit_scale); });
  Report rep;
  rep.command = "eval-mesh";
  rep.parameters = {{"mesh", o.mesh}, {"unit_scale", o.unit_scale}};
  rep.metrics = {{"triangles", s.triangles},
                 {"surface_area_cm2", s.surface_area_cm2},
                 {"avg_curvature_per_cm", s.avg_curvature_per_cm},
                 {"degenerate_triangles", s.degenerate_triangles},
                 {"curvature_vertices", s.curvature_vertices}};
  rep.table.header = {"triangles", "surface_area_cm2", "avg_curvature_per_cm", "degenerate_triangles",
                      "curvature_vertices"};
  rep.table.rows.push_back(numbers_row({static_cast<double>(s.triangles), s.surface_area_cm2, s.avg_curvature_per_cm,
                                        static_cast<double>(s.degenerate_triangles),
                                        static_cast<double>(s.curvature_vertices)}));
  return rep;
}

// ---------------------------------------------------------------------------

struct SelectOptions {
  Common common;
  std::string cloud, model, images, list_out;
  double voxel_size = kDefaultWeakVoxelSize;
  std::size_t threshold = kDefaultWeakThreshold;
  std::optional<std::size_t> budget;
  bool include_empty = false;
  std::optional<double> min_depth, max_depth;
};

Report select_views(const SelectOptions& o) {
  const PointCloud cloud = stage("reading --cloud", [&] { return io::read_ply_cloud(o.cloud); });
  const io::ColmapSparseModel model = stage("reading --model", [&] { return io::parse_colmap_text(o.model); });
  std::vector<CandidateImage> candidates = stage("building candidates", [&] { return candidates_from_colmap(model); });

  if (!o.images.empty()) {
    const std::string text = stage("reading --images", [&] { return io::read_text_file(o.images); });
    std::set<std::string> keep;
    std::size_t start = 0;
    while (start <= text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string::npos) end = text.size();
      std::string line = text.substr(start, end - start);
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
      if (!line.empty()) keep.insert(line);
      start = end + 1;
    }
    std::erase_if(candidates, [&](const CandidateImage& c) { return !keep.contains(c.id); });
  }
  if (candidates.empty()) throw Failure{1, "building candidates: no candidate images"};

  WeakVoxelOptions wopt;
  wopt.voxel_size = o.voxel_size;
  wopt.threshold = o.threshold;
  wopt.include_empty_in_bbox = o.include_empty;
  const WeakVoxelSet weak = stage("finding weak voxels", [&] { return find_weak_voxels(cloud, wopt); });

  SelectionOptions sopt;
  sopt.budget = o.budget;
  if (o.min_depth || o.max_depth) {
    sopt.depth_band = DepthBand{o.min_depth.value_or(0.0), o.max_depth.value_or(std::numeric_limits<double>::infinity())};
  }
  const SelectionResult sel = stage("greedy selection", [&] { return greedy_select(candidates, weak, sopt); });

  if (!o.list_out.empty()) {
    std::string list;
    for (const auto& id : sel.selected) list += id + "\n";
    stage("writing --list-out", [&] { io::write_text_file(o.list_out, list); });
  }

  Report rep;
  rep.command = "select-views";
  rep.parameters = {{"cloud", o.cloud},
                    {"model", o.model},
                    {"images", o.images},
                    {"voxel_size", o.voxel_size},
                    {"threshold", o.threshold},
                    {"budget", o.budget ? Json(*o.budget) : Json(nullptr)},
                    {"include_empty_bbox", o.include_empty},
                    {"min_depth", o.min_depth ? number(*o.min_depth) : Json(nullptr)},
                    {"max_depth", o.max_depth ? number(*o.max_depth) : Json(nullptr)},
                    {"list_out", o.list_out}};
  Json steps = Json::array();
  rep.table.header = {"rank", "image", "gain", "coverage"};
  for (std::size_t i = 0; i < sel.selected.size(); ++i) {
    steps.push_back({{"image", sel.selected[i]}, {"gain", sel.marginal_gains[i]}, {"coverage", sel.coverage_curve[i]}});
    rep.table.rows.push_back({std::to_string(i + 1), sel.selected[i], std::to_string(sel.marginal_gains[i]),
                              format_number(sel.coverage_curve[i])});
  }
  rep.metrics = {{"candidates", candidates.size()},
                 {"total_weak", sel.total_weak},
                 {"covered", sel.covered},
                 {"coverage", sel.total_weak ? static_cast<double>(sel.covered) / static_cast<double>(sel.total_weak)
                                             : 0.0},
                 {"selected_count", sel.selected.size()},
                 {"selected", sel.selected},
                 {"steps", steps}};
  return rep;
}

// ---------------------------------------------------------------------------

struct ColorOptions {
  Common common;
  std::string recon, gt, mask;
  std::vector<int> region;
};

Json delta_e_json(const DeltaEStats& s) {
  return {{"delta_e_mean", s.mean}, {"delta_e_std", s.std}, {"delta_e_min", s.min}, {"delta_e_max", s.max},
          {"L_diff", s.mean_L_diff}, {"a_diff", s.mean_a_diff}, {"b_diff", s.mean_b_diff}, {"pixels", s.pixels}};
}

std::vector<std::string> delta_e_row(const std::string& name, const DeltaEStats& s) {
  std::vector<std::string> row{name};
  for (const auto& v : numbers_row({s.mean, s.std, s.min, s.max, s.mean_L_diff, s.mean_a_diff, s.mean_b_diff})) {
    row.push_back(v);
  }
  row.push_back(std::to_string(s.pixels));
  return row;
}

// Statistics of the union of all pixel sets.
DeltaEStats pool(const std::vector<DeltaEStats>& parts) {
  DeltaEStats p;
  p.min = std::numeric_limits<double>::infinity();
  p.max = -std::numeric_limits<double>::infinity();
  double n = 0.0;
  for (const auto& s : parts) n += static_cast<double>(s.pixels);
  for (const auto& s : parts) {
    const double w = static_cast<double>(s.pixels) / n;
    p.mean += w * s.mean;
    p.mean_L_diff += w * s.mean_L_diff;
    p.mean_a_diff += w * s.mean_a_diff;
    p.mean_b_diff += w * s.mean_b_diff;
    p.min = std::min(p.min, s.min);
    p.max = std::max(p.max, s.max);
    p.pixels += s.pixels;
  }
  double var = 0.0;
  for (const auto& s : parts) {
    const double w = static_cast<double>(s.pixels) / n;
    var += w * (s.std * s.std + (s.mean - p.mean) * (s.mean - p.mean));
  }
  p.std = std::sqrt(var);
  return p;
}

Report eval_color(const ColorOptions& o, std::ostream& err) {
  const auto names = stage("listing images", [&] { return matched_pngs(o.recon, o.gt, err); });
  std::optional<Image8> mask;
  if (!o.mask.empty()) mask = stage("reading --mask", [&] { return io::read_png(o.mask); });
  if (mask && !o.region.empty()) mask = stage("cropping --mask", [&] { return crop(*mask, to_rect(o.region)); });

  Report rep;
  rep.command = "eval-color";
  rep.parameters = {{"recon", o.recon}, {"gt", o.gt}, {"mask", o.mask},
                    {"region", o.region.empty() ? Json(nullptr) : rect_json(to_rect(o.region))}};
  rep.table.header = {"image", "delta_e_mean", "delta_e_std", "delta_e_min", "delta_e_max",
                      "L_diff", "a_diff", "b_diff", "pixels"};
  Json pairs = Json::array();
  std::vector<DeltaEStats> all;
  for (const auto& name : names) {
    const std::string label = "image " + name;
    Image8 r = stage("reading " + (fs::path(o.recon) / name).string(), [&] { return io::read_png(fs::path(o.recon) / name); });
    Image8 g = stage("reading " + (fs::path(o.gt) / name).string(), [&] { return io::read_png(fs::path(o.gt) / name); });
    if (!o.region.empty()) {
      r = stage(label, [&] { return crop(r, to_rect(o.region)); });
      g = stage(label, [&] { return crop(g, to_rect(o.region)); });
    }
    const DeltaEStats s = stage(label, [&] { return delta_e_stats(r, g, mask ? &*mask : nullptr); });
    all.push_back(s);
    Json entry = {{"image", name}};
    entry.update(delta_e_json(s));
    pairs.push_back(entry);
    rep.table.rows.push_back(delta_e_row(name, s));
  }
  const DeltaEStats agg = pool(all);
  rep.table.rows.push_back(delta_e_row("ALL", agg));
  rep.metrics = {{"pairs", pairs}, {"aggregate", delta_e_json(agg)}};
  return rep;
}

// ---------------------------------------------------------------------------

struct RenderOptions {
  Common common;
  std::string pred, gt;
};

Report eval_render(const RenderOptions& o, std::ostream& err) {
  const auto names = stage("listing images", [&] { return matched_pngs(o.pred, o.gt, err); });
  Report rep;
  rep.command = "eval-render";
  rep.parameters = {{"pred", o.pred}, {"gt", o.gt}};
  rep.table.header = {"image", "psnr_db", "ssim"};
  Json pairs = Json::array();
  double psnr_sum = 0.0, ssim_sum = 0.0;
  for (const auto& name : names) {
    const Image8 p = stage("reading " + (fs::path(o.pred) / name).string(), [&] { return io::read_png(fs::path(o.pred) / name); });
    const Image8 g = stage("reading " + (fs::path(o.gt) / name).string(), [&] { return io::read_png(fs::path(o.gt) / name); });
    const double ps = stage("image " + name, [&] { return psnr(p, g); });
    const double ss = stage("image " + name, [&] { return ssim(p, g); });
    psnr_sum += ps;
    ssim_sum += ss;
    pairs.push_back({{"image", name}, {"psnr_db", number(ps)}, {"ssim", ss}});
    rep.table.rows.push_back({name, format_number(ps), format_number(ss)});
  }
  const double n = static_cast<double>(names.size());
  rep.table.rows.push_back({"MEAN", format_number(psnr_sum / n), format_number(ssim_sum / n)});
  rep.metrics = {{"pairs", pairs},
                 {"aggregate", {{"psnr_db", number(psnr_sum / n)}, {"ssim", ssim_sum / n}, {"images", names.size()}}}};
  return rep;
}

// ---------------------------------------------------------------------------

struct PreprocessOptions {
  Common common;
  std::string input, output, exposures;
  std::vector<std::string> ops;
  std::vector<int> crop_rect;
  double clip_limit = 2.0;
  int tiles_x = 8, tiles_y = 8;
  std::optional<double> reference_exposure;
};

fs::path sibling_output(const fs::path& input) {
  fs::path in = input.lexically_normal();
  if (in.filename().empty()) in = in.parent_path();
  return in.parent_path() / (in.filename().string() + "_preprocessed");
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size();
  return m % 2 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

Report preprocess(const PreprocessOptions& o) {
  if (o.ops.empty()) throw Failure{1, "preprocess: --ops is empty"};
  for (const auto& op : o.ops) {
    if (op == "crop" && o.crop_rect.empty()) throw Failure{1, "preprocess: crop requires --crop x,y,w,h"};
    if (op == "exposure" && o.exposures.empty()) throw Failure{1, "preprocess: exposure requires --exposures"};
  }
  const auto names = stage("listing images", [&] { return list_pngs(o.input); });
  if (names.empty()) throw Failure{1, "listing images: no PNG files in " + o.input};
  const fs::path out_dir = o.output.empty() ? sibling_output(o.input) : fs::path(o.output);

  std::map<std::string, double> exposure;
  double reference = 0.0;
  if (!o.exposures.empty()) {
    const auto records = stage("reading --exposures", [&] { return io::parse_exposure_csv(o.exposures); });
    std::vector<double> values;
    for (const auto& r : records) {
      exposure[r.name] = r.exposure;
      values.push_back(r.exposure);
    }
    if (values.empty()) throw Failure{1, "reading --exposures: no records"};
    reference = o.reference_exposure.value_or(median(values));
  }

  stage("creating " + out_dir.string(), [&] { fs::create_directories(out_dir); });
  Report rep;
  rep.command = "preprocess";
  rep.table.header = {"image", "width", "height", "output"};
  Json files = Json::array();
  const ClaheParams cp{o.clip_limit, o.tiles_x, o.tiles_y};
  for (const auto& name : names) {
    const fs::path src = fs::path(o.input) / name;
    Image8 img = stage("reading " + src.string(), [&] { return io::read_png(src); });
    for (const auto& op : o.ops) {
      const std::string label = op + " on " + name;
      if (op == "crop") {
        img = stage(label, [&] { return crop(img, to_rect(o.crop_rect)); });
      } else if (op == "clahe") {
        img = stage(label, [&] { return clahe(img, cp); });
      } else if (op == "white-balance") {
        img = stage(label, [&] { return white_balance_grayworld(img); });
      } else if (op == "exposure") {
        const auto it = exposure.find(name);
        if (it == exposure.end()) throw Failure{1, label + ": no exposure record for " + name};
        img = stage(label, [&] { return exposure_normalize(img, it->second, reference); });
      }
    }
    const fs::path dst = out_dir / name;
    stage("writing " + dst.string(), [&] { io::write_png(img, dst); });
    files.push_back({{"image", name}, {"width", img.width()}, {"height", img.height()}, {"output", dst.string()}});
    rep.table.rows.push_back({name, std::to_string(img.width()), std::to_string(img.height()), dst.string()});
  }

  rep.parameters = {{"input", o.input},
                    {"output", out_dir.string()},
                    {"ops", o.ops},
                    {"crop", o.crop_rect.empty() ? Json(nullptr) : rect_json(to_rect(o.crop_rect))},
                    {"clip_limit", number(o.clip_limit)},
                    {"tiles_x", o.tiles_x},
                    {"tiles_y", o.tiles_y},
                    {"exposures", o.exposures},
                    {"reference_exposure", o.exposures.empty() ? Json(nullptr) : Json(reference)}};
  rep.metrics = {{"images", names.size()}, {"files", files}};
  return rep;
}

void emit(const Report& rep, const Common& c, std::ostream& out) {
  const std::string text = c.format == "csv" ? cli::to_csv(rep.table) : rep.json();
  if (c.out.empty()) {
    out << text;
  } else {
    stage("writing --out", [&] { io::write_text_file(c.out, text); });
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evaluation toolkit for underwater SLAM, reconstruction and rendering", kToolName};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  TrajOptions traj;
  auto* s_traj = app.add_subcommand("eval-traj", "ATE and RPE of an estimated trajectory against ground truth");
  s_traj->add_option("--est", traj.est, "Estimated trajectory (t tx ty tz qx qy qz qw)")->required();
  s_traj->add_option("--gt", traj.gt, "Ground-truth trajectory")->required();
  s_traj->add_option("--mode", traj.mode, "Alignment")->check(CLI::IsMember({"sim3", "se3"}))->capture_default_str();
  s_traj->add_option("--delta", traj.delta, "RPE frame offset")->check(CLI::PositiveNumber)->capture_default_str();
  s_traj->add_option("--max-dt", traj.max_dt, "Association tolerance in seconds (default: half the median gt interval)");
  s_traj->add_option("--quat-order", traj.quat_order, "Quaternion field order")
      ->check(CLI::IsMember({"xyzw", "wxyz"}))
      ->capture_default_str();
  add_common(*s_traj, traj.common);

  GeomOptions geom;
  auto* s_geom = app.add_subcommand("eval-geom", "Scale-normalize, ICP-align and compare two point clouds");
  s_geom->add_option("--cloud", geom.cloud, "Evaluated cloud (PLY)")->required();
  s_geom->add_option("--reference", geom.reference, "Reference cloud (PLY)")->required();
  s_geom->add_option("--k", geom.k, "Roughness neighbourhood size")->capture_default_str();
  s_geom->add_option("--max-corr", geom.max_corr, "ICP correspondence distance in meters (default: 5x mean NN spacing)");
  s_geom->add_option("--max-iter", geom.max_iter, "ICP iteration cap")->capture_default_str();
  s_geom->add_option("--eps", geom.eps, "ICP relative RMSE convergence threshold")->capture_default_str();
  add_common(*s_geom, geom.common);

  MeshOptions mesh;
  auto* s_mesh = app.add_subcommand("eval-mesh", "Triangle count, surface area and mean curvature of a mesh");
  s_mesh->add_option("--mesh", mesh.mesh, "Mesh (PLY)")->required();
  s_mesh->add_option("--unit-scale", mesh.unit_scale, "Centimeters per mesh unit")->capture_default_str();
  add_common(*s_mesh, mesh.common);

  SelectOptions sel;
  auto* s_sel = app.add_subcommand("select-views", "Greedy in-air image selection covering weak voxels");
  s_sel->add_option("--cloud", sel.cloud, "Underwater cloud (PLY)")->required();
  s_sel->add_option("--model", sel.model, "COLMAP text model directory with the candidate images")->required();
  s_sel->add_option("--images", sel.images, "Optional file listing the candidate image names, one per line");
  s_sel->add_option("--voxel-size", sel.voxel_size, "Voxel edge in meters")->capture_default_str();
  s_sel->add_option("--threshold", sel.threshold, "Weak if fewer points than this")->capture_default_str();
  s_sel->add_option("--budget", sel.budget, "Maximum number of images to select");
  s_sel->add_flag("--include-empty-bbox", sel.include_empty, "Also treat empty voxels inside the bounding box as weak");
  s_sel->add_option("--min-depth", sel.min_depth, "Minimum camera depth for a visible voxel");
  s_sel->add_option("--max-depth", sel.max_depth, "Maximum camera depth for a visible voxel");
  s_sel->add_option("--list-out", sel.list_out, "Write the selected image names, one per line");
  add_common(*s_sel, sel.common);

  ColorOptions color;
  auto* s_color = app.add_subcommand("eval-color", "CIE Lab colour differences between matching images");
  s_color->add_option("--recon", color.recon, "Directory of restored or rendered images")->required();
  s_color->add_option("--gt", color.gt, "Directory of ground-truth images")->required();
  s_color->add_option("--mask", color.mask, "Grayscale PNG; non-zero pixels are evaluated");
  s_color->add_option("--region", color.region, "Evaluate only x,y,w,h")->expected(4)->delimiter(',');
  add_common(*s_color, color.common);

  RenderOptions render;
  auto* s_render = app.add_subcommand("eval-render", "PSNR and SSIM between matching images");
  s_render->add_option("--pred", render.pred, "Directory of rendered images")->required();
  s_render->add_option("--gt", render.gt, "Directory of ground-truth images")->required();
  add_common(*s_render, render.common);

  PreprocessOptions pre;
  auto* s_pre = app.add_subcommand("preprocess", "Crop, CLAHE, white balance and exposure normalization");
  s_pre->add_option("--input", pre.input, "Directory of PNG images")->required();
  s_pre->add_option("--output", pre.output, "Output directory (default: <input>_preprocessed)");
  s_pre->add_option("--ops", pre.ops, "Operations in order")
      ->required()
      ->delimiter(',')
      ->check(CLI::IsMember({"crop", "clahe", "white-balance", "exposure"}));
  s_pre->add_option("--crop", pre.crop_rect, "Crop rectangle x,y,w,h")->expected(4)->delimiter(',');
  s_pre->add_option("--clip-limit", pre.clip_limit, "CLAHE clip limit")->capture_default_str();
  s_pre->add_option("--tiles-x", pre.tiles_x, "CLAHE tile columns")->capture_default_str();
  s_pre->add_option("--tiles-y", pre.tiles_y, "CLAHE tile rows")->capture_default_str();
  s_pre->add_option("--exposures", pre.exposures, "CSV with name and exposure columns");
  s_pre->add_option("--reference-exposure", pre.reference_exposure, "Target exposure (default: median of the CSV)");
  add_common(*s_pre, pre.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    Report rep;
    const Common* common = nullptr;
    if (*s_traj) {
      rep = eval_traj(traj);
      common = &traj.common;
    } else if (*s_geom) {
      rep = eval_geom(geom);
      common = &geom.common;
    } else if (*s_mesh) {
      rep = eval_mesh(mesh);
      common = &mesh.common;
    } else if (*s_sel) {
      rep = select_views(sel);
      common = &sel.common;
    } else if (*s_color) {
      rep = eval_color(color, err);
      common = &color.common;
    } else if (*s_render) {
      rep = eval_render(render, err);
      common = &render.common;
    } else {
      rep = preprocess(pre);
      common = &pre.common;
    }
    rep.timing_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(rep, *common, out);
    return 0;
  } catch (const Failure& f) {
    err << "error: " << f.message << "\n";
    return f.code;
  } catch (const FileError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace baltic

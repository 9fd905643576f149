#include <cmath>
#include <string>

#include "baltic/error.hpp"
#include "baltic/io.hpp"
#include "text_util.hpp"

namespace baltic::io {

namespace {

using detail::format_double;
using detail::quoted;

bool is_skippable(std::string_view line) {
  const auto t = detail::trim(line);
  return t.empty() || t.front() == '#';
}

[[noreturn]] void fail(std::string_view file, std::size_t line_no, const std::string& msg) {
  throw ParseError(std::string(file) + " line " + std::to_string(line_no) + ": " + msg);
}

double number(std::string_view tok, std::string_view file, std::size_t ln) {
  const auto v = detail::parse_double(tok);
  if (!v || !std::isfinite(*v)) fail(file, ln, "invalid number " + quoted(tok));
  return *v;
}

template <typename Int>
Int integer(std::string_view tok, std::string_view file, std::size_t ln) {
  const auto v = detail::parse_int<Int>(tok);
  if (!v) fail(file, ln, "invalid integer " + quoted(tok));
  return *v;
}

std::string_view model_name(ColmapCameraModel m) {
  return m == ColmapCameraModel::kPinhole ? "PINHOLE" : "SIMPLE_PINHOLE";
}

void parse_cameras(std::string_view text, ColmapSparseModel& model) {
  constexpr std::string_view kFile = "cameras.txt";
  const auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t ln = i + 1;
    if (is_skippable(lines[i])) continue;
    const auto f = detail::split_whitespace(lines[i]);
    if (f.size() < 4) fail(kFile, ln, "expected CAMERA_ID MODEL WIDTH HEIGHT PARAMS[]");

    ColmapCamera cam;
    const auto id = integer<std::uint32_t>(f[0], kFile, ln);
    std::size_t n_params = 0;
    if (f[1] == "PINHOLE") {
      cam.model = ColmapCameraModel::kPinhole;
      n_params = 4;
    } else if (f[1] == "SIMPLE_PINHOLE") {
      cam.model = ColmapCameraModel::kSimplePinhole;
      n_params = 3;
    } else {
      fail(kFile, ln, "unsupported camera model " + quoted(f[1]) + " (expected PINHOLE or SIMPLE_PINHOLE)");
    }
    cam.width = integer<int>(f[2], kFile, ln);
    cam.height = integer<int>(f[3], kFile, ln);
    if (cam.width <= 0 || cam.height <= 0) fail(kFile, ln, "camera size must be positive");
    if (f.size() != 4 + n_params) {
      fail(kFile, ln, std::string(model_name(cam.model)) + " expects " + std::to_string(n_params) + " parameters");
    }
    for (std::size_t p = 0; p < n_params; ++p) cam.params.push_back(number(f[4 + p], kFile, ln));
    if (!model.cameras.emplace(id, std::move(cam)).second) fail(kFile, ln, "duplicate camera id " + std::to_string(id));
  }
}

void parse_images(std::string_view text, ColmapSparseModel& model) {
  constexpr std::string_view kFile = "images.txt";
  const auto lines = detail::split_lines(text);
  std::size_t i = 0;
  while (i < lines.size()) {
    const std::size_t ln = i + 1;
    if (is_skippable(lines[i])) {
      ++i;
      continue;
    }
    const auto f = detail::split_whitespace(lines[i]);
    if (f.size() < 10) fail(kFile, ln, "expected IMAGE_ID QW QX QY QZ TX TY TZ CAMERA_ID NAME");

    ColmapImage img;
    const auto id = integer<std::uint32_t>(f[0], kFile, ln);
    const double qw = number(f[1], kFile, ln), qx = number(f[2], kFile, ln), qy = number(f[3], kFile, ln),
                 qz = number(f[4], kFile, ln);
    if (qw == 0.0 && qx == 0.0 && qy == 0.0 && qz == 0.0) fail(kFile, ln, "zero quaternion");
    img.rotation = UnitQuaternion(qw, qx, qy, qz);
    img.translation = Vec3(number(f[5], kFile, ln), number(f[6], kFile, ln), number(f[7], kFile, ln));
    img.camera_id = integer<std::uint32_t>(f[8], kFile, ln);
    // Names may contain spaces: take the remainder of the line after CAMERA_ID.
    const auto line = detail::trim(lines[i]);
    const auto name_start = static_cast<std::size_t>(f[9].data() - line.data());
    img.name = std::string(line.substr(name_start));

    // The observation line always follows the header, even when empty.
    ++i;
    if (i < lines.size()) {
      const std::size_t pln = i + 1;
      const auto p = detail::split_whitespace(lines[i]);
      if (p.size() % 3 != 0) fail(kFile, pln, "POINTS2D must be (X, Y, POINT3D_ID) triplets");
      img.points2d.reserve(p.size() / 3);
      for (std::size_t k = 0; k < p.size(); k += 3) {
        img.points2d.push_back(ColmapPoint2D{number(p[k], kFile, pln), number(p[k + 1], kFile, pln),
                                             integer<std::int64_t>(p[k + 2], kFile, pln)});
      }
      ++i;
    }
    if (!model.images.emplace(id, std::move(img)).second) fail(kFile, ln, "duplicate image id " + std::to_string(id));
  }
}

void parse_points3d(std::string_view text, ColmapSparseModel& model) {
  constexpr std::string_view kFile = "points3D.txt";
  const auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t ln = i + 1;
    if (is_skippable(lines[i])) continue;
    const auto f = detail::split_whitespace(lines[i]);
    if (f.size() < 8 || (f.size() - 8) % 2 != 0) {
      fail(kFile, ln, "expected POINT3D_ID X Y Z R G B ERROR TRACK[] as (IMAGE_ID, POINT2D_IDX)");
    }
    ColmapPoint3D pt;
    const auto id = integer<std::uint64_t>(f[0], kFile, ln);
    pt.xyz = Vec3(number(f[1], kFile, ln), number(f[2], kFile, ln), number(f[3], kFile, ln));
    for (int c = 0; c < 3; ++c) {
      const auto v = integer<int>(f[4 + c], kFile, ln);
      if (v < 0 || v > 255) fail(kFile, ln, "color component out of range");
      pt.color[c] = static_cast<std::uint8_t>(v);
    }
    pt.error = number(f[7], kFile, ln);
    for (std::size_t k = 8; k < f.size(); k += 2) {
      pt.track.push_back(
          ColmapTrackElement{integer<std::uint32_t>(f[k], kFile, ln), integer<std::uint32_t>(f[k + 1], kFile, ln)});
    }
    if (!model.points3d.emplace(id, std::move(pt)).second) fail(kFile, ln, "duplicate point id " + std::to_string(id));
  }
}

void validate_references(const ColmapSparseModel& model) {
  for (const auto& [id, img] : model.images) {
    if (!model.cameras.contains(img.camera_id)) {
      throw ParseError("image " + std::to_string(id) + " references missing camera " + std::to_string(img.camera_id));
    }
    for (const auto& p : img.points2d) {
      if (p.point3d_id == -1) continue;
      if (p.point3d_id < 0 || !model.points3d.contains(static_cast<std::uint64_t>(p.point3d_id))) {
        throw ParseError("image " + std::to_string(id) + " references missing 3D point " +
                         std::to_string(p.point3d_id));
      }
    }
  }
  for (const auto& [id, pt] : model.points3d) {
    for (const auto& t : pt.track) {
      const auto it = model.images.find(t.image_id);
      if (it == model.images.end()) {
        throw ParseError("3D point " + std::to_string(id) + " track references missing image " +
                         std::to_string(t.image_id));
      }
      if (t.point2d_idx >= it->second.points2d.size()) {
        throw ParseError("3D point " + std::to_string(id) + " track references observation " +
                         std::to_string(t.point2d_idx) + " of image " + std::to_string(t.image_id) + ", which has " +
                         std::to_string(it->second.points2d.size()));
      }
    }
  }
}

}  // namespace

CameraPinhole ColmapSparseModel::pinhole(std::uint32_t image_id) const {
  const auto it = images.find(image_id);
  if (it == images.end()) throw InvalidArgument("unknown image id " + std::to_string(image_id));
  const ColmapCamera& cam = cameras.at(it->second.camera_id);
  return CameraPinhole(cam.fx(), cam.fy(), cam.cx(), cam.cy(), cam.width, cam.height,
                       it->second.world_to_camera());
}

PointCloud ColmapSparseModel::point_cloud() const {
  PointCloud cloud;
  cloud.points.reserve(points3d.size());
  cloud.colors.reserve(points3d.size());
  for (const auto& [id, pt] : points3d) {
    cloud.points.push_back(pt.xyz);
    cloud.colors.push_back(pt.color);
  }
  return cloud;
}

std::size_t ColmapSparseModel::observation_count() const {
  std::size_t n = 0;
  for (const auto& [id, pt] : points3d) n += pt.track.size();
  return n;
}

ColmapSparseModel parse_colmap_text(std::string_view cameras_txt, std::string_view images_txt,
                                    std::string_view points3d_txt) {
  ColmapSparseModel model;
  parse_cameras(cameras_txt, model);
  parse_images(images_txt, model);
  parse_points3d(points3d_txt, model);
  validate_references(model);
  return model;
}

ColmapSparseModel parse_colmap_text(const std::filesystem::path& dir) {
  const std::string cams = read_text_file(dir / "cameras.txt");
  const std::string imgs = read_text_file(dir / "images.txt");
  const std::string pts = read_text_file(dir / "points3D.txt");
  try {
    return parse_colmap_text(cams, imgs, pts);
  } catch (const ParseError& e) {
    throw ParseError(dir.string() + ": " + e.what());
  }
}

ColmapTextFiles format_colmap_text(const ColmapSparseModel& model) {
  ColmapTextFiles out;

  out.cameras =
      "# Camera list with one line of data per camera:\n"
      "#   CAMERA_ID, MODEL, WIDTH, HEIGHT, PARAMS[]\n"
      "# Number of cameras: " +
      std::to_string(model.cameras.size()) + "\n";
  for (const auto& [id, cam] : model.cameras) {
    out.cameras += std::to_string(id) + ' ' + std::string(model_name(cam.model)) + ' ' + std::to_string(cam.width) +
                   ' ' + std::to_string(cam.height);
    for (double p : cam.params) out.cameras += ' ' + format_double(p);
    out.cameras += '\n';
  }

  out.images =
      "# Image list with two lines of data per image:\n"
      "#   IMAGE_ID, QW, QX, QY, QZ, TX, TY, TZ, CAMERA_ID, NAME\n"
      "#   POINTS2D[] as (X, Y, POINT3D_ID)\n"
      "# Number of images: " +
      std::to_string(model.images.size()) + "\n";
  for (const auto& [id, img] : model.images) {
    const auto& q = img.rotation;
    out.images += std::to_string(id) + ' ' + format_double(q.w()) + ' ' + format_double(q.x()) + ' ' +
                  format_double(q.y()) + ' ' + format_double(q.z()) + ' ' + format_double(img.translation.x()) + ' ' +
                  format_double(img.translation.y()) + ' ' + format_double(img.translation.z()) + ' ' +
                  std::to_string(img.camera_id) + ' ' + img.name + '\n';
    bool first = true;
    for (const auto& p : img.points2d) {
      if (!first) out.images += ' ';
      first = false;
      out.images += format_double(p.x) + ' ' + format_double(p.y) + ' ' + std::to_string(p.point3d_id);
    }
    out.images += '\n';
  }

  out.points3d =
      "# 3D point list with one line of data per point:\n"
      "#   POINT3D_ID, X, Y, Z, R, G, B, ERROR, TRACK[] as (IMAGE_ID, POINT2D_IDX)\n"
      "# Number of points: " +
      std::to_string(model.points3d.size()) + "\n";
  for (const auto& [id, pt] : model.points3d) {
    out.points3d += std::to_string(id) + ' ' + format_double(pt.xyz.x()) + ' ' + format_double(pt.xyz.y()) + ' ' +
                    format_double(pt.xyz.z()) + ' ' + std::to_string(pt.color[0]) + ' ' +
                    std::to_string(pt.color[1]) + ' ' + std::to_string(pt.color[2]) + ' ' + format_double(pt.error);
    for (const auto& t : pt.track) {
      out.points3d += ' ' + std::to_string(t.image_id) + ' ' + std::to_string(t.point2d_idx);
    }
    out.points3d += '\n';
  }
  return out;
}

void write_colmap_text(const ColmapSparseModel& model, const std::filesystem::path& dir) {
  const auto files = format_colmap_text(model);
  write_text_file(dir / "cameras.txt", files.cameras);
  write_text_file(dir / "images.txt", files.images);
  write_text_file(dir / "points3D.txt", files.points3d);
}

}  // namespace baltic::io

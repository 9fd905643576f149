#include <array>
#include <cmath>
#include <string>

#include "baltic/error.hpp"
#include "baltic/io.hpp"
#include "text_util.hpp"

namespace baltic::io {

namespace {

constexpr double kMinQuatNorm = 0.99;
constexpr double kMaxQuatNorm = 1.01;

Trajectory parse_pose_lines(std::string_view text, QuaternionOrder order, std::string_view what) {
  std::vector<TimedPose> poses;
  const auto lines = detail::split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string line_no = std::to_string(ln + 1);
    const auto line = detail::trim(lines[ln]);
    if (line.empty() || line.front() == '#') continue;

    const auto fields = detail::split_whitespace(line);
    if (fields.size() != 8) {
      throw ParseError("expected 8 fields at line " + line_no + ", got " + std::to_string(fields.size()));
    }
    std::array<double, 8> v{};
    for (std::size_t i = 0; i < 8; ++i) {
      const auto parsed = detail::parse_double(fields[i]);
      if (!parsed || !std::isfinite(*parsed)) {
        throw ParseError("invalid number " + detail::quoted(fields[i]) + " at line " + line_no);
      }
      v[i] = *parsed;
    }

    double qw, qx, qy, qz;
    if (order == QuaternionOrder::kXyzw) {
      qx = v[4], qy = v[5], qz = v[6], qw = v[7];
    } else {
      qw = v[4], qx = v[5], qy = v[6], qz = v[7];
    }
    const double norm = std::sqrt(qw * qw + qx * qx + qy * qy + qz * qz);
    if (!(norm >= kMinQuatNorm && norm <= kMaxQuatNorm)) {
      throw ParseError("quaternion norm " + detail::format_double(norm) + " outside [0.99, 1.01] at line " + line_no);
    }
    if (!poses.empty() && !(v[0] > poses.back().t)) {
      throw ParseError("non-monotonic timestamp at line " + line_no);
    }
    poses.push_back(TimedPose{v[0], Vec3(v[1], v[2], v[3]), UnitQuaternion(qw, qx, qy, qz)});
  }
  if (poses.empty()) throw ParseError(std::string(what) + " contains no poses");
  return Trajectory(std::move(poses));
}

}  // namespace

Trajectory parse_trajectory_text(std::string_view text, QuaternionOrder order) {
  return parse_pose_lines(text, order, "trajectory");
}

Trajectory parse_trajectory(const std::filesystem::path& path, QuaternionOrder order) {
  const std::string text = read_text_file(path);
  try {
    return parse_trajectory_text(text, order);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

// The tracker export currently shares the estimated-trajectory grammar.
Trajectory parse_groundtruth_tf_text(std::string_view text, QuaternionOrder order) {
  return parse_pose_lines(text, order, "ground-truth file");
}

Trajectory parse_groundtruth_tf(const std::filesystem::path& path, QuaternionOrder order) {
  const std::string text = read_text_file(path);
  try {
    return parse_groundtruth_tf_text(text, order);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string format_trajectory(const Trajectory& traj, QuaternionOrder order) {
  using detail::format_double;
  std::string out = order == QuaternionOrder::kXyzw ? "# t tx ty tz qx qy qz qw\n" : "# t tx ty tz qw qx qy qz\n";
  for (const auto& p : traj) {
    const auto& q = p.orientation;
    out += format_double(p.t) + ' ' + format_double(p.position.x()) + ' ' + format_double(p.position.y()) + ' ' +
           format_double(p.position.z()) + ' ';
    if (order == QuaternionOrder::kXyzw) {
      out += format_double(q.x()) + ' ' + format_double(q.y()) + ' ' + format_double(q.z()) + ' ' +
             format_double(q.w());
    } else {
      out += format_double(q.w()) + ' ' + format_double(q.x()) + ' ' + format_double(q.y()) + ' ' +
             format_double(q.z());
    }
    out += '\n';
  }
  return out;
}

void write_trajectory(const Trajectory& traj, const std::filesystem::path& path, QuaternionOrder order) {
  write_text_file(path, format_trajectory(traj, order));
}

}  // namespace baltic::io

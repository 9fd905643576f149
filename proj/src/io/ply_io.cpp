#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <optional>
#include <string>

#include "baltic/error.hpp"
#include "baltic/io.hpp"
#include "text_util.hpp"

static_assert(std::endian::native == std::endian::little, "PLY binary I/O assumes a little-endian host");

namespace baltic::io {

namespace {

enum class ScalarType { kInt8, kUint8, kInt16, kUint16, kInt32, kUint32, kFloat32, kFloat64 };

std::optional<ScalarType> scalar_type(std::string_view name) {
  if (name == "char" || name == "int8") return ScalarType::kInt8;
  if (name == "uchar" || name == "uint8") return ScalarType::kUint8;
  if (name == "short" || name == "int16") return ScalarType::kInt16;
  if (name == "ushort" || name == "uint16") return ScalarType::kUint16;
  if (name == "int" || name == "int32") return ScalarType::kInt32;
  if (name == "uint" || name == "uint32") return ScalarType::kUint32;
  if (name == "float" || name == "float32") return ScalarType::kFloat32;
  if (name == "double" || name == "float64") return ScalarType::kFloat64;
  return std::nullopt;
}

double min_value(ScalarType t) {
  switch (t) {
    case ScalarType::kInt8: return std::numeric_limits<std::int8_t>::min();
    case ScalarType::kInt16: return std::numeric_limits<std::int16_t>::min();
    case ScalarType::kInt32: return std::numeric_limits<std::int32_t>::min();
    case ScalarType::kUint8:
    case ScalarType::kUint16:
    case ScalarType::kUint32: return 0.0;
    default: return -std::numeric_limits<double>::infinity();
  }
}

double max_value(ScalarType t) {
  switch (t) {
    case ScalarType::kInt8: return std::numeric_limits<std::int8_t>::max();
    case ScalarType::kUint8: return std::numeric_limits<std::uint8_t>::max();
    case ScalarType::kInt16: return std::numeric_limits<std::int16_t>::max();
    case ScalarType::kUint16: return std::numeric_limits<std::uint16_t>::max();
    case ScalarType::kInt32: return std::numeric_limits<std::int32_t>::max();
    case ScalarType::kUint32: return std::numeric_limits<std::uint32_t>::max();
    default: return std::numeric_limits<double>::infinity();
  }
}

bool is_integral(ScalarType t) { return t != ScalarType::kFloat32 && t != ScalarType::kFloat64; }

struct Property {
  std::string name;
  ScalarType type = ScalarType::kFloat32;
  bool is_list = false;
  ScalarType count_type = ScalarType::kUint8;
};

struct Element {
  std::string name;
  std::size_t count = 0;
  std::vector<Property> properties;
};

struct Header {
  bool binary = false;
  std::vector<Element> elements;
  std::size_t body_offset = 0;
};

Header parse_header(std::span<const std::uint8_t> bytes) {
  const std::string_view all(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  if (all.substr(0, 3) != "ply") throw ParseError("PLY: missing 'ply' magic");

  Header h;
  bool have_format = false;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (true) {
    const auto nl = all.find('\n', pos);
    if (nl == std::string_view::npos) throw ParseError("PLY: header is not terminated by end_header");
    const auto line = detail::trim(all.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    const std::string at = " (header line " + std::to_string(line_no) + ")";
    if (line_no == 1) {
      if (line != "ply") throw ParseError("PLY: missing 'ply' magic");
      continue;
    }
    const auto f = detail::split_whitespace(line);
    if (f.empty() || f[0] == "comment" || f[0] == "obj_info") continue;
    if (f[0] == "end_header") break;
    if (f[0] == "format") {
      if (f.size() != 3) throw ParseError("PLY: malformed format line" + at);
      if (f[1] == "ascii") {
        h.binary = false;
      } else if (f[1] == "binary_little_endian") {
        h.binary = true;
      } else {
        throw ParseError("PLY: unsupported format " + detail::quoted(f[1]) + at);
      }
      have_format = true;
    } else if (f[0] == "element") {
      if (f.size() != 3) throw ParseError("PLY: malformed element line" + at);
      const auto count = detail::parse_int<std::size_t>(f[2]);
      if (!count) throw ParseError("PLY: invalid element count " + detail::quoted(f[2]) + at);
      h.elements.push_back(Element{std::string(f[1]), *count, {}});
    } else if (f[0] == "property") {
      if (h.elements.empty()) throw ParseError("PLY: property before any element" + at);
      Property p;
      if (f.size() == 5 && f[1] == "list") {
        const auto ct = scalar_type(f[2]);
        const auto it = scalar_type(f[3]);
        if (!ct || !it) throw ParseError("PLY: unknown property type in list" + at);
        if (!is_integral(*ct)) throw ParseError("PLY: list count type must be integral" + at);
        p.is_list = true;
        p.count_type = *ct;
        p.type = *it;
        p.name = std::string(f[4]);
      } else if (f.size() == 3) {
        const auto t = scalar_type(f[1]);
        if (!t) throw ParseError("PLY: unknown property type " + detail::quoted(f[1]) + at);
        p.type = *t;
        p.name = std::string(f[2]);
      } else {
        throw ParseError("PLY: malformed property line" + at);
      }
      h.elements.back().properties.push_back(std::move(p));
    } else {
      throw ParseError("PLY: unexpected header keyword " + detail::quoted(f[0]) + at);
    }
  }
  if (!have_format) throw ParseError("PLY: missing format line");
  h.body_offset = pos;
  return h;
}

// Sequential value source over either an ASCII token stream or binary bytes.
class BodyReader {
 public:
  BodyReader(std::span<const std::uint8_t> body, bool binary) : body_(body), binary_(binary) {}

  double read(ScalarType t) { return binary_ ? read_binary(t) : read_ascii(t); }

  std::size_t remaining_bytes() const { return body_.size() - pos_; }

 private:
  template <typename T>
  double load() {
    if (body_.size() - pos_ < sizeof(T)) throw ParseError("PLY: unexpected end of binary data");
    T v;
    std::memcpy(&v, body_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return static_cast<double>(v);
  }

  double read_binary(ScalarType t) {
    switch (t) {
      case ScalarType::kInt8: return load<std::int8_t>();
      case ScalarType::kUint8: return load<std::uint8_t>();
      case ScalarType::kInt16: return load<std::int16_t>();
      case ScalarType::kUint16: return load<std::uint16_t>();
      case ScalarType::kInt32: return load<std::int32_t>();
      case ScalarType::kUint32: return load<std::uint32_t>();
      case ScalarType::kFloat32: return load<float>();
      case ScalarType::kFloat64: return load<double>();
    }
    return 0.0;
  }

  double read_ascii(ScalarType t) {
    auto is_space = [](std::uint8_t c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; };
    while (pos_ < body_.size() && is_space(body_[pos_])) ++pos_;
    const std::size_t start = pos_;
    while (pos_ < body_.size() && !is_space(body_[pos_])) ++pos_;
    if (pos_ == start) throw ParseError("PLY: unexpected end of ASCII data");
    const std::string_view tok(reinterpret_cast<const char*>(body_.data()) + start, pos_ - start);
    const auto v = detail::parse_double(tok);
    if (!v) throw ParseError("PLY: invalid value " + detail::quoted(tok));
    if (is_integral(t)) {
      if (*v != std::floor(*v) || *v < min_value(t) || *v > max_value(t)) {
        throw ParseError("PLY: invalid integer " + detail::quoted(tok));
      }
    }
    return *v;
  }

  std::span<const std::uint8_t> body_;
  bool binary_;
  std::size_t pos_ = 0;
};

std::optional<std::size_t> find_property(const Element& e, std::initializer_list<std::string_view> names) {
  for (std::size_t i = 0; i < e.properties.size(); ++i) {
    for (auto n : names) {
      if (e.properties[i].name == n) return i;
    }
  }
  return std::nullopt;
}

}  // namespace

Geometry read_ply_bytes(std::span<const std::uint8_t> bytes) {
  const Header header = parse_header(bytes);
  BodyReader reader(bytes.subspan(header.body_offset), header.binary);

  const Element* vertex_el = nullptr;
  const Element* face_el = nullptr;
  for (const auto& e : header.elements) {
    if (e.name == "vertex") vertex_el = &e;
    if (e.name == "face") face_el = &e;
  }
  if (vertex_el == nullptr) throw ParseError("PLY: no vertex element");

  std::optional<std::size_t> ix, iy, iz, ir, ig, ib, ifaces;
  ix = find_property(*vertex_el, {"x"});
  iy = find_property(*vertex_el, {"y"});
  iz = find_property(*vertex_el, {"z"});
  if (!ix || !iy || !iz) throw ParseError("PLY: vertex element lacks x/y/z");
  for (auto i : {*ix, *iy, *iz}) {
    if (vertex_el->properties[i].is_list) throw ParseError("PLY: vertex coordinate declared as list");
  }
  ir = find_property(*vertex_el, {"red", "r"});
  ig = find_property(*vertex_el, {"green", "g"});
  ib = find_property(*vertex_el, {"blue", "b"});
  const bool colors = ir && ig && ib && vertex_el->properties[*ir].type == ScalarType::kUint8 &&
                      !vertex_el->properties[*ir].is_list && vertex_el->properties[*ig].type == ScalarType::kUint8 &&
                      !vertex_el->properties[*ig].is_list && vertex_el->properties[*ib].type == ScalarType::kUint8 &&
                      !vertex_el->properties[*ib].is_list;
  if (face_el != nullptr) {
    ifaces = find_property(*face_el, {"vertex_indices", "vertex_index"});
    if (!ifaces || !face_el->properties[*ifaces].is_list) throw ParseError("PLY: face element lacks vertex_indices list");
    if (!is_integral(face_el->properties[*ifaces].type)) throw ParseError("PLY: face indices must be integral");
  }

  std::vector<Vec3> vertices;
  std::vector<Rgb8> vertex_colors;
  std::vector<std::array<std::uint32_t, 3>> triangles;

  for (const auto& e : header.elements) {
    if (e.properties.empty()) continue;  // records without properties occupy no data
    // Avoid huge reservations from bogus counts: each binary record takes at least one byte.
    const std::size_t reserve = std::min(e.count, reader.remaining_bytes());
    if (&e == vertex_el) {
      vertices.reserve(reserve);
      if (colors) vertex_colors.reserve(reserve);
    }
    std::vector<double> values(e.properties.size());
    for (std::size_t n = 0; n < e.count; ++n) {
      for (std::size_t p = 0; p < e.properties.size(); ++p) {
        const Property& prop = e.properties[p];
        if (!prop.is_list) {
          values[p] = reader.read(prop.type);
          continue;
        }
        const double count_d = reader.read(prop.count_type);
        if (count_d < 0 || count_d > 1e6) throw ParseError("PLY: invalid list length");
        const auto count = static_cast<std::size_t>(count_d);
        if (&e == face_el && p == *ifaces) {
          if (count < 3) throw ParseError("PLY: face " + std::to_string(n) + " has fewer than 3 vertices");
          std::vector<std::uint32_t> idx(count);
          for (std::size_t k = 0; k < count; ++k) {
            const double v = reader.read(prop.type);
            if (v < 0 || v >= static_cast<double>(vertex_el->count)) {
              throw ParseError("PLY: face " + std::to_string(n) + " vertex index " + detail::format_double(v) +
                               " out of range");
            }
            idx[k] = static_cast<std::uint32_t>(v);
          }
          for (std::size_t k = 1; k + 1 < count; ++k) triangles.push_back({idx[0], idx[k], idx[k + 1]});
        } else {
          for (std::size_t k = 0; k < count; ++k) reader.read(prop.type);
        }
      }
      if (&e == vertex_el) {
        Vec3 v(values[*ix], values[*iy], values[*iz]);
        if (!is_finite(v)) throw ParseError("PLY: non-finite vertex " + std::to_string(n));
        vertices.push_back(v);
        if (colors) {
          vertex_colors.push_back({static_cast<std::uint8_t>(values[*ir]), static_cast<std::uint8_t>(values[*ig]),
                                   static_cast<std::uint8_t>(values[*ib])});
        }
      }
    }
  }

  if (face_el != nullptr) {
    TriangleMesh mesh{std::move(vertices), std::move(triangles)};
    return mesh;
  }
  return PointCloud{std::move(vertices), std::move(vertex_colors)};
}

Geometry read_ply(const std::filesystem::path& path) {
  const auto bytes = read_binary_file(path);
  try {
    return read_ply_bytes(bytes);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

PointCloud read_ply_cloud(const std::filesystem::path& path) {
  auto g = read_ply(path);
  if (auto* cloud = std::get_if<PointCloud>(&g)) return std::move(*cloud);
  return PointCloud{std::move(std::get<TriangleMesh>(g).vertices), {}};
}

TriangleMesh read_ply_mesh(const std::filesystem::path& path) {
  auto g = read_ply(path);
  if (auto* mesh = std::get_if<TriangleMesh>(&g)) return std::move(*mesh);
  throw ParseError(path.string() + ": PLY has no face element");
}

namespace {

class PlyWriter {
 public:
  explicit PlyWriter(PlyEncoding enc) : binary_(enc == PlyEncoding::kBinaryLittleEndian) {}

  void header(std::size_t n_vertices, bool colors, std::optional<std::size_t> n_faces) {
    std::string h = "ply\nformat ";
    h += binary_ ? "binary_little_endian" : "ascii";
    h += " 1.0\nelement vertex " + std::to_string(n_vertices) +
         "\nproperty double x\nproperty double y\nproperty double z\n";
    if (colors) h += "property uchar red\nproperty uchar green\nproperty uchar blue\n";
    if (n_faces) h += "element face " + std::to_string(*n_faces) + "\nproperty list uchar int vertex_indices\n";
    h += "end_header\n";
    out_.insert(out_.end(), h.begin(), h.end());
  }

  template <typename T>
  void value(T v) {
    if (binary_) {
      const auto* p = reinterpret_cast<const std::uint8_t*>(&v);
      out_.insert(out_.end(), p, p + sizeof(T));
      return;
    }
    if (!line_start_) out_.push_back(' ');
    std::string s;
    if constexpr (std::is_floating_point_v<T>) {
      s = detail::format_double(v);
    } else {
      s = std::to_string(static_cast<long long>(v));
    }
    out_.insert(out_.end(), s.begin(), s.end());
    line_start_ = false;
  }

  void end_record() {
    if (!binary_) out_.push_back('\n');
    line_start_ = true;
  }

  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  bool binary_;
  bool line_start_ = true;
  std::vector<std::uint8_t> out_;
};

void write_vertices(PlyWriter& w, const std::vector<Vec3>& vertices, const std::vector<Rgb8>& colors) {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    w.value(vertices[i].x());
    w.value(vertices[i].y());
    w.value(vertices[i].z());
    if (!colors.empty()) {
      for (auto c : colors[i]) w.value(c);
    }
    w.end_record();
  }
}

}  // namespace

std::vector<std::uint8_t> format_ply(const PointCloud& cloud, PlyEncoding encoding) {
  cloud.validate();
  PlyWriter w(encoding);
  w.header(cloud.size(), cloud.has_colors(), std::nullopt);
  write_vertices(w, cloud.points, cloud.colors);
  return w.take();
}

std::vector<std::uint8_t> format_ply(const TriangleMesh& mesh, PlyEncoding encoding) {
  mesh.validate();
  if (mesh.vertices.size() > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
    throw InvalidArgument("mesh too large for int32 PLY indices");
  }
  PlyWriter w(encoding);
  w.header(mesh.vertices.size(), false, mesh.triangles.size());
  write_vertices(w, mesh.vertices, {});
  for (const auto& t : mesh.triangles) {
    w.value(std::uint8_t{3});
    for (auto i : t) w.value(static_cast<std::int32_t>(i));
    w.end_record();
  }
  return w.take();
}

void write_ply(const PointCloud& cloud, const std::filesystem::path& path, PlyEncoding encoding) {
  write_binary_file(path, format_ply(cloud, encoding));
}

void write_ply(const TriangleMesh& mesh, const std::filesystem::path& path, PlyEncoding encoding) {
  write_binary_file(path, format_ply(mesh, encoding));
}

}  // namespace baltic::io

#include <cmath>
#include <optional>
#include <set>
#include <string>

#include "baltic/error.hpp"
#include "baltic/io.hpp"
#include "text_util.hpp"

namespace baltic::io {

namespace {

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(detail::trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

}  // namespace

std::vector<ExposureRecord> parse_exposure_csv_text(std::string_view text) {
  const auto lines = detail::split_lines(text);
  std::size_t i = 0;
  while (i < lines.size() && detail::trim(lines[i]).empty()) ++i;
  if (i == lines.size()) throw ParseError("exposure CSV: missing header");

  const auto header = split_csv(lines[i]);
  std::optional<std::size_t> name_col, exposure_col;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "name") name_col = c;
    if (header[c] == "exposure") exposure_col = c;
  }
  if (!name_col) throw ParseError("exposure CSV: missing column 'name'");
  if (!exposure_col) throw ParseError("exposure CSV: missing column 'exposure'");

  std::vector<ExposureRecord> records;
  std::set<std::string, std::less<>> seen;
  for (++i; i < lines.size(); ++i) {
    const std::string at = " at line " + std::to_string(i + 1);
    if (detail::trim(lines[i]).empty()) continue;
    const auto cells = split_csv(lines[i]);
    if (cells.size() != header.size()) {
      throw ParseError("exposure CSV: expected " + std::to_string(header.size()) + " fields" + at);
    }
    const auto name = cells[*name_col];
    if (name.empty()) throw ParseError("exposure CSV: empty name" + at);
    const auto exposure = detail::parse_double(cells[*exposure_col]);
    if (!exposure || !std::isfinite(*exposure)) {
      throw ParseError("exposure CSV: invalid exposure " + detail::quoted(cells[*exposure_col]) + at);
    }
    if (!(*exposure > 0.0)) throw ParseError("exposure CSV: exposure must be positive" + at);
    if (!seen.emplace(name).second) throw ParseError("exposure CSV: duplicate name " + detail::quoted(name) + at);
    records.push_back({std::string(name), *exposure});
  }
  return records;
}

std::vector<ExposureRecord> parse_exposure_csv(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_exposure_csv_text(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string format_exposure_csv(std::span<const ExposureRecord> records) {
  std::string out = "name,exposure\n";
  for (const auto& r : records) out += r.name + ',' + detail::format_double(r.exposure) + '\n';
  return out;
}

}  // namespace baltic::io

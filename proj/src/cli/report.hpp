#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace baltic::cli {

using Json = nlohmann::ordered_json;

/// Finite values as numbers; infinities and NaN as the strings "inf", "-inf", "nan".
Json number(double v);

/// Shortest round-trip decimal, or inf/-inf/nan.
std::string format_number(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string to_csv(const CsvTable& table);

struct Report {
  std::string command;
  Json parameters = Json::object();
  Json metrics = Json::object();
  CsvTable table;
  double timing_s = 0.0;

  std::string json() const;
};

}  // namespace baltic::cli

// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// File formats: point clouds as one row of comma-separated reals per point;
// bipartite graphs as "u,v" index rows under a one-line header; probability
// caches as "component_index,p" rows. UTF-8, LF line endings. Every dataset
// CSV has a JSON manifest sidecar (<stem>.manifest.json). All number
// formatting goes through std::to_chars, so outputs are locale-independent
// and byte-stable.

#ifndef SUBMAX_IO_HPP_
#define SUBMAX_IO_HPP_

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include <json.hpp>

#include "submax/core.hpp"
#include "submax/functions.hpp"

namespace submax {

using Json = nlohmann::json;

// Shortest round-trip decimal representation.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view token) {
  double v = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  while (begin != end && (*begin == ' ' || *begin == '\t')) ++begin;
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc()) {
    throw IoError("could not parse number: '" + std::string(token) + "'");
  }
  return v;
}

inline long long parse_int(std::string_view token) {
  long long v = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  while (begin != end && (*begin == ' ' || *begin == '\t')) ++begin;
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc()) {
    throw IoError("could not parse integer: '" + std::string(token) + "'");
  }
  return v;
}

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

inline std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("could not open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

inline void write_text(const std::string& path, const std::string& text) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("could not write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

inline std::string manifest_path_for(const std::string& csv_path) {
  std::filesystem::path p(csv_path);
  p.replace_extension();
  return p.string() + ".manifest.json";
}

inline void write_manifest(const std::string& csv_path, const Json& manifest) {
  write_text(manifest_path_for(csv_path), manifest.dump(2) + "\n");
}

inline Json read_manifest(const std::string& csv_path) {
  std::ifstream in(manifest_path_for(csv_path));
  if (!in) throw IoError("missing manifest for " + csv_path);
  Json manifest;
  try {
    in >> manifest;
  } catch (const Json::parse_error& e) {
    throw IoError("bad manifest for " + csv_path + ": " + e.what());
  }
  return manifest;
}

inline std::vector<std::vector<double>> read_matrix_csv(
    const std::string& path) {
  std::vector<std::vector<double>> rows;
  for (const auto& line : read_lines(path)) {
    std::vector<double> row;
    for (const auto token : split_csv_line(line)) row.push_back(parse_double(token));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw IoError("ragged rows in " + path);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError("no rows in " + path);
  return rows;
}

inline void write_matrix_csv(const std::string& path,
                             const std::vector<std::vector<double>>& rows) {
  std::string text;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) text += ',';
      text += format_double(row[i]);
    }
    text += '\n';
  }
  write_text(path, text);
}

inline PointCloudDataset read_point_cloud_csv(const std::string& path,
                                              Metric metric) {
  PointCloudDataset data;
  data.points = read_matrix_csv(path);
  data.metric = metric;
  data.validate();
  return data;
}

inline BipartiteDataset read_bipartite_csv(const std::string& path) {
  const auto lines = read_lines(path);
  if (lines.empty() || lines.front() != "u,v") {
    throw IoError("bipartite CSV must start with the header 'u,v': " + path);
  }
  BipartiteDataset data;
  int max_left = -1;
  int max_right = -1;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto tokens = split_csv_line(lines[i]);
    if (tokens.size() != 2) throw IoError("bad edge row in " + path);
    const int u = static_cast<int>(parse_int(tokens[0]));
    const int v = static_cast<int>(parse_int(tokens[1]));
    data.edges.emplace_back(u, v);
    max_left = std::max(max_left, u);
    max_right = std::max(max_right, v);
  }
  data.left_size = max_left + 1;
  data.right_size = max_right + 1;
  data.validate();
  return data;
}

inline void write_bipartite_csv(const std::string& path,
                                const BipartiteDataset& data) {
  std::string text = "u,v\n";
  for (const auto& [u, v] : data.edges) {
    text += std::to_string(u);
    text += ',';
    text += std::to_string(v);
    text += '\n';
  }
  write_text(path, text);
}

inline void write_probability_cache(const std::string& path,
                                    std::span<const double> p) {
  std::string text = "component_index,p\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    text += std::to_string(i);
    text += ',';
    text += format_double(p[i]);
    text += '\n';
  }
  write_text(path, text);
}

inline std::vector<double> read_probability_cache(const std::string& path) {
  const auto lines = read_lines(path);
  if (lines.empty() || lines.front() != "component_index,p") {
    throw IoError("probability cache must start with 'component_index,p': " +
                  path);
  }
  std::vector<double> p(lines.size() - 1, 0.0);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto tokens = split_csv_line(lines[i]);
    if (tokens.size() != 2) throw IoError("bad cache row in " + path);
    const auto index = static_cast<std::size_t>(parse_int(tokens[0]));
    if (index >= p.size()) throw IoError("cache index out of range in " + path);
    p[index] = parse_double(tokens[1]);
  }
  return p;
}

}  // namespace submax

#endif  // SUBMAX_IO_HPP_

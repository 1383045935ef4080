#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wgl/digest.hpp"
#include "wgl/errors.hpp"

namespace wgl {

inline constexpr const char* kToolVersion = "wgl 1.0.0";

// Tabular result: fixed column names, rows of pre-formatted cells.
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> cells) {
    if (cells.size() != columns.size())
      throw parameter_error("ResultTable: row width mismatch");
    rows.push_back(std::move(cells));
  }
};

// shortest round-trip decimal; deterministic across runs
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string render_csv(const ResultTable& t, const std::string& schema,
                              const std::vector<std::string>& comments = {}) {
  std::ostringstream os;
  os << "# schema: " << schema << "\n";
  for (const auto& c : comments) os << "# " << c << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << row[i];
    os << "\n";
  }
  return os.str();
}

inline std::string render_json(const ResultTable& t, const std::string& schema) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json obj;
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = row[i];
    rows.push_back(obj);
  }
  nlohmann::json doc;
  doc["schema"] = schema;
  doc["rows"] = rows;
  return doc.dump(2) + "\n";
}

// Reproducibility sidecar for every emitted data file.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::string zero_file_digest;  // empty when no zero file was used
  std::uint64_t table_limit = 0;
  std::uint64_t wall_time_ms = 0;
  std::string tool_version = kToolVersion;
  std::string result_digest;
};

inline nlohmann::json manifest_to_json(const RunManifest& m) {
  nlohmann::json params;
  for (const auto& [k, v] : m.parameters) params[k] = v;
  nlohmann::json doc;
  doc["command"] = m.command;
  doc["parameters"] = params;
  doc["zero_file_digest"] = m.zero_file_digest;
  doc["table_limit"] = m.table_limit;
  doc["wall_time_ms"] = m.wall_time_ms;
  doc["tool_version"] = m.tool_version;
  doc["result_digest"] = m.result_digest;
  return doc;
}

inline RunManifest manifest_from_json(const nlohmann::json& doc) {
  RunManifest m;
  m.command = doc.at("command").get<std::string>();
  for (const auto& [k, v] : doc.at("parameters").items())
    m.parameters.emplace_back(k, v.get<std::string>());
  m.zero_file_digest = doc.at("zero_file_digest").get<std::string>();
  m.table_limit = doc.at("table_limit").get<std::uint64_t>();
  m.wall_time_ms = doc.at("wall_time_ms").get<std::uint64_t>();
  m.tool_version = doc.at("tool_version").get<std::string>();
  m.result_digest = doc.at("result_digest").get<std::string>();
  return m;
}

inline void write_text_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw resource_error("cannot open for writing: " + path);
  out << data;
  if (!out) throw resource_error("write failed: " + path);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw resource_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes <path> and <path>.manifest.json; result_digest covers the data
// file bytes so a verifier can re-hash and compare.
inline void emit_with_manifest(const std::string& path,
                               const std::string& data, RunManifest m) {
  write_text_file(path, data);
  m.result_digest = hex_digest(fnv1a64(data));
  write_text_file(path + ".manifest.json",
                  manifest_to_json(m).dump(2) + "\n");
}

inline bool verify_manifest(const std::string& data_path) {
  auto doc = nlohmann::json::parse(read_text_file(data_path + ".manifest.json"));
  RunManifest m = manifest_from_json(doc);
  return m.result_digest == file_digest(data_path);
}

}  // namespace wgl

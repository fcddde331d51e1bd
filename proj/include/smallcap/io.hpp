#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "smallcap/sweep.hpp"

namespace smallcap {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

Json to_json(const OrientedBox& b);
OrientedBox box_from_json(const Json& j);

Json to_json(const CapFamily& fam);

Json to_json(const SweepResult& res);
SweepResult sweep_result_from_json(const Json& j);

std::string render_report(const SweepResult& res, const std::string& format);  // json|csv|markdown

/// Raw little-endian complex64 pairs plus a JSON sidecar {dim, N, spacing}.
/// `path` is the basename: writes path.bin and path.json.
void write_grid(const GridFunction& f, const std::string& path);
GridFunction read_grid(const std::string& path);

/// One `key = value` per line, '#' comments, UTF-8.
std::map<std::string, std::string> parse_config_file(const std::string& path);

}  // namespace smallcap

#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace dce::scenario {

using json = nlohmann::ordered_json;

enum class Verb { Mirror, Moore, Cavity, Friction, Plasma, Estimate };
const char* to_string(Verb v) noexcept;
/// Throws ValidationError for an unknown verb.
Verb parse_verb(const std::string& s);

/// One sweep axis: raw values in the unit of the swept parameter (or in
/// `unit` when the axis gives one).
struct SweepAxis {
  std::string param;
  std::string unit;
  std::vector<double> values;
};

struct Scenario {
  std::string name;
  Verb verb = Verb::Estimate;
  json params = json::object();
  std::vector<SweepAxis> sweep;
  json annotations = json::object();
  json source;  // the file as parsed, echoed into the report
  bool write_csv = true;
  bool write_json = true;
};

/// Parses and validates a scenario document. `origin` prefixes diagnostics.
/// Errors carry the line/column for syntax problems and the field path for
/// schema problems.
Scenario parse_scenario(const std::string& text, const std::string& origin = "scenario");
Scenario load_scenario(const std::filesystem::path& file);

/// Directory holding the shipped presets ($DCE_PRESET_DIR overrides).
std::filesystem::path preset_dir();
std::vector<std::string> preset_names();
Scenario load_preset(const std::string& name);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct PointResult {
  std::size_t index = 0;
  json values = json::object();  // swept parameter -> value
  bool ok = false;
  json record = json::object();
  Table table;
  std::vector<std::string> warnings;
  std::string error_kind;
  std::string error;
};

struct Report {
  Scenario scenario;
  std::vector<PointResult> points;
  std::size_t failed() const;
};

/// Number of sweep points (product of the axis sizes, 1 without sweep).
std::size_t point_count(const Scenario& s);

/// Runs every sweep point on up to `jobs` threads. Points are validated
/// before any computation (ValidationError aborts the run); numerical
/// failures are recorded per point.
Report run_scenario(const Scenario& s, int jobs = 1);

std::string report_json(const Report& r);
std::string report_csv(const Report& r);

/// Writes <name>.json and/or <name>.csv under `dir` via rename of a
/// temporary file. Returns the written paths.
std::vector<std::filesystem::path> write_report(const Report& r,
                                                const std::filesystem::path& dir);

const char* git_describe() noexcept;

}  // namespace dce::scenario

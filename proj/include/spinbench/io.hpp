#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spinbench/compile.hpp"
#include "spinbench/evolve.hpp"
#include "spinbench/sequence.hpp"
#include "spinbench/shapes.hpp"
#include "spinbench/spinsys.hpp"

namespace spinbench::io {

using nlohmann::json;

json to_json(const SpinSystem& sys);
SpinSystem spin_system_from_json(const json& j);

// Sequence <-> JSON list of tagged items ({"type": "pulse"|"rotation"|"framez"|"delay", ...}).
json to_json(const Sequence& seq);
Sequence sequence_from_json(const json& j);

json to_json(const ShapeSpec& spec);
ShapeSpec shape_spec_from_json(const json& j);

// Full round-trip formatting (17 significant digits).
std::string format_double(double v);

// Generic CSV writer; every cell formatted with format_double.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

// t_s, observable_name, value
void write_trajectory_csv(const std::string& path, const std::vector<TrajectorySample>& traj);

// Sign grid, one row per spin, a trailing column per interval duration handled
// separately: first line "intervals_s,v1,...", then rows of +-1.
void write_scheme_csv(const std::string& path, const RefocusScheme& scheme);

struct MeasurementRecord {
  int setting_id;
  int observable_id;
  double value;
};

void write_measurements_csv(const std::string& path, const std::vector<MeasurementRecord>& recs);
std::vector<MeasurementRecord> read_measurements_csv(const std::string& path);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace spinbench::io

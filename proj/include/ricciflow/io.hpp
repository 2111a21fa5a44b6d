#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ricciflow/analysis.hpp"
#include "ricciflow/flow.hpp"
#include "ricciflow/graph.hpp"

namespace ricciflow {

inline constexpr const char* kToolVersion = "0.1.0";

// Malformed document; the message names the offending key path.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParsedGraph {
  WeightedGraph graph;
  std::optional<VertexMeasure> measure;
};

// Graph document: {"vertices": [..], "edges": [{"u","v","w"?}..],
// "measure"?: {label: value}, "boundary"?: [..]}. Weights default to 1.
ParsedGraph parse_graph(const std::string& text);
nlohmann::ordered_json graph_to_json(const WeightedGraph& g,
                                     const VertexMeasure* measure = nullptr);

// Measure given either inline ("2,3,4", generator vertex order) or as a JSON
// object file ({label: value}).
VertexMeasure parse_measure_inline(const std::string& text, int n);
VertexMeasure parse_measure_json(const std::string& text,
                                 const WeightedGraph& g);

struct RunManifest {
  std::string command;
  std::string graph_source;
  std::string timestamp;
  std::string tool_version = kToolVersion;
  FlowConfig config;
  FlowOutcome outcome;
  std::optional<double> blowup_estimate;

  bool operator==(const RunManifest&) const = default;
};

nlohmann::ordered_json manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::ordered_json& j);

// CSV with header t,m:<label>..,ric:<label>.. in vertex order, one row per
// snapshot, 17 significant digits; plus a sibling <base>.manifest.json
// carrying the manifest (and with it the outcome).
void write_trajectory(const Trajectory& traj, const WeightedGraph& g,
                      const std::string& csv_path, const RunManifest& manifest);
std::string trajectory_csv(const Trajectory& traj, const WeightedGraph& g);
std::string manifest_path_for(const std::string& csv_path);

nlohmann::ordered_json report_to_json(const CheckReport& report);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace ricciflow

#include "ricciflow/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace ricciflow {

using nlohmann::ordered_json;

static std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ParsedGraph parse_graph(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("graph document: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("graph document: root is not an object");
  if (!doc.contains("vertices") || !doc["vertices"].is_array())
    throw ParseError("graph document: missing \"vertices\" array");

  std::vector<std::string> labels;
  std::map<std::string, Vertex> index;
  for (size_t i = 0; i < doc["vertices"].size(); ++i) {
    const auto& v = doc["vertices"][i];
    if (!v.is_string())
      throw ParseError("vertices[" + std::to_string(i) + "]: not a string");
    std::string label = v.get<std::string>();
    if (index.count(label))
      throw ParseError("vertices[" + std::to_string(i) + "]: duplicate label '" +
                       label + "'");
    index[label] = static_cast<Vertex>(labels.size());
    labels.push_back(std::move(label));
  }

  auto lookup = [&](const ordered_json& j, const std::string& path) {
    if (!j.is_string()) throw ParseError(path + ": not a string");
    auto it = index.find(j.get<std::string>());
    if (it == index.end())
      throw ParseError(path + ": unknown vertex '" + j.get<std::string>() + "'");
    return it->second;
  };

  std::vector<Edge> edges;
  std::map<std::pair<Vertex, Vertex>, double> seen;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array())
      throw ParseError("graph document: \"edges\" is not an array");
    for (size_t i = 0; i < doc["edges"].size(); ++i) {
      const std::string path = "edges[" + std::to_string(i) + "]";
      const auto& e = doc["edges"][i];
      if (!e.is_object() || !e.contains("u") || !e.contains("v"))
        throw ParseError(path + ": needs \"u\" and \"v\"");
      Vertex u = lookup(e["u"], path + ".u");
      Vertex v = lookup(e["v"], path + ".v");
      if (u == v) throw ParseError(path + ": self-loop");
      double w = 1.0;
      if (e.contains("w")) {
        if (!e["w"].is_number()) throw ParseError(path + ".w: not a number");
        w = e["w"].get<double>();
      }
      if (!(w > 0.0)) throw ParseError(path + ".w: weight must be positive");
      auto key = std::minmax(u, v);
      auto it = seen.find({key.first, key.second});
      if (it != seen.end()) {
        if (it->second != w)
          throw ParseError(path + ": asymmetric weight for edge seen before");
        throw ParseError(path + ": parallel edge");
      }
      seen[{key.first, key.second}] = w;
      edges.push_back({u, v, w});
    }
  }

  std::vector<Vertex> boundary;
  if (doc.contains("boundary")) {
    if (!doc["boundary"].is_array())
      throw ParseError("graph document: \"boundary\" is not an array");
    for (size_t i = 0; i < doc["boundary"].size(); ++i)
      boundary.push_back(
          lookup(doc["boundary"][i], "boundary[" + std::to_string(i) + "]"));
  }

  std::optional<VertexMeasure> measure;
  if (doc.contains("measure")) {
    if (!doc["measure"].is_object())
      throw ParseError("graph document: \"measure\" is not an object");
    std::vector<double> values(labels.size(), 0.0);
    std::vector<char> have(labels.size(), 0);
    for (const auto& [key, val] : doc["measure"].items()) {
      auto it = index.find(key);
      if (it == index.end())
        throw ParseError("measure." + key + ": unknown vertex");
      if (!val.is_number())
        throw ParseError("measure." + key + ": not a number");
      double x = val.get<double>();
      if (!(x > 0.0))
        throw ParseError("measure." + key + ": must be positive");
      values[it->second] = x;
      have[it->second] = 1;
    }
    for (size_t i = 0; i < labels.size(); ++i)
      if (!have[i])
        throw ParseError("measure: missing vertex '" + labels[i] + "'");
    measure = VertexMeasure(std::move(values));
  }

  try {
    WeightedGraph graph(std::move(labels), edges, std::move(boundary));
    return ParsedGraph{std::move(graph), std::move(measure)};
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("graph document: ") + e.what());
  }
}

ordered_json graph_to_json(const WeightedGraph& g, const VertexMeasure* measure) {
  ordered_json doc;
  doc["vertices"] = g.labels();
  ordered_json edges = ordered_json::array();
  for (const Edge& e : g.edges()) {
    ordered_json je;
    je["u"] = g.label(e.u);
    je["v"] = g.label(e.v);
    je["w"] = e.w;
    edges.push_back(std::move(je));
  }
  doc["edges"] = std::move(edges);
  if (measure != nullptr) {
    ordered_json m;
    for (Vertex x = 0; x < g.num_vertices(); ++x)
      m[g.label(x)] = (*measure)[x];
    doc["measure"] = std::move(m);
  }
  if (!g.boundary().empty()) {
    ordered_json b = ordered_json::array();
    for (Vertex x : g.boundary()) b.push_back(g.label(x));
    doc["boundary"] = std::move(b);
  }
  return doc;
}

VertexMeasure parse_measure_inline(const std::string& text, int n) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    double v;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      throw ParseError("measure: '" + item + "' is not a number");
    }
    while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos])))
      ++pos;
    if (pos != item.size())
      throw ParseError("measure: trailing characters in '" + item + "'");
    if (!(v > 0.0)) throw ParseError("measure: entries must be positive");
    values.push_back(v);
  }
  if (static_cast<int>(values.size()) != n)
    throw ParseError("measure: expected " + std::to_string(n) + " entries, got " +
                     std::to_string(values.size()));
  return VertexMeasure(std::move(values));
}

VertexMeasure parse_measure_json(const std::string& text,
                                 const WeightedGraph& g) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("measure document: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("measure document: not an object");
  std::vector<double> values(g.num_vertices(), 0.0);
  std::vector<char> have(g.num_vertices(), 0);
  for (const auto& [key, val] : doc.items()) {
    auto idx = g.find(key);
    if (!idx) throw ParseError("measure." + key + ": unknown vertex");
    if (!val.is_number()) throw ParseError("measure." + key + ": not a number");
    double x = val.get<double>();
    if (!(x > 0.0)) throw ParseError("measure." + key + ": must be positive");
    values[*idx] = x;
    have[*idx] = 1;
  }
  for (Vertex x = 0; x < g.num_vertices(); ++x)
    if (!have[x]) throw ParseError("measure: missing vertex '" + g.label(x) + "'");
  return VertexMeasure(std::move(values));
}

static std::string dimension_to_string(const Dimension& d) {
  return d.is_infinite() ? "inf" : fmt17(d.value());
}

static Dimension dimension_from_string(const std::string& s) {
  if (s == "inf") return Dimension::infinite();
  try {
    return Dimension::finite(std::stod(s));
  } catch (const std::exception&) {
    throw ParseError("dimension: '" + s + "' is neither 'inf' nor a positive number");
  }
}

static const char* outcome_name(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::BlownUp: return "BlownUp";
    case OutcomeKind::Converged: return "Converged";
    case OutcomeKind::ReachedTMax: return "ReachedTMax";
  }
  return "unknown";
}

ordered_json manifest_to_json(const RunManifest& m) {
  ordered_json j;
  j["command"] = m.command;
  j["graph_source"] = m.graph_source;
  j["timestamp"] = m.timestamp;
  j["tool_version"] = m.tool_version;
  ordered_json c;
  c["dimension"] = dimension_to_string(m.config.dimension);
  c["normalized"] = m.config.normalized;
  c["t_max"] = m.config.t_max;
  c["rtol"] = m.config.rtol;
  c["atol"] = m.config.atol;
  c["dt_init"] = m.config.dt_init;
  c["dt_min"] = m.config.dt_min;
  c["dt_max"] = m.config.dt_max;
  c["blowup_fraction"] = m.config.blowup_fraction;
  c["conv_rhs_tol"] = m.config.conv_rhs_tol;
  c["conv_spread_tol"] = m.config.conv_spread_tol;
  c["conv_window"] = m.config.conv_window;
  c["sample_stride"] = m.config.sample_stride;
  j["config"] = std::move(c);
  ordered_json o;
  o["kind"] = outcome_name(m.outcome.kind);
  o["time"] = m.outcome.time;
  o["dt_underflow"] = m.outcome.dt_underflow;
  j["outcome"] = std::move(o);
  if (m.blowup_estimate) j["blowup_estimate"] = *m.blowup_estimate;
  return j;
}

RunManifest manifest_from_json(const ordered_json& j) {
  RunManifest m;
  try {
    m.command = j.at("command").get<std::string>();
    m.graph_source = j.at("graph_source").get<std::string>();
    m.timestamp = j.at("timestamp").get<std::string>();
    m.tool_version = j.at("tool_version").get<std::string>();
    const auto& c = j.at("config");
    m.config.dimension = dimension_from_string(c.at("dimension").get<std::string>());
    m.config.normalized = c.at("normalized").get<bool>();
    m.config.t_max = c.at("t_max").get<double>();
    m.config.rtol = c.at("rtol").get<double>();
    m.config.atol = c.at("atol").get<double>();
    m.config.dt_init = c.at("dt_init").get<double>();
    m.config.dt_min = c.at("dt_min").get<double>();
    m.config.dt_max = c.at("dt_max").get<double>();
    m.config.blowup_fraction = c.at("blowup_fraction").get<double>();
    m.config.conv_rhs_tol = c.at("conv_rhs_tol").get<double>();
    m.config.conv_spread_tol = c.at("conv_spread_tol").get<double>();
    m.config.conv_window = c.at("conv_window").get<int>();
    m.config.sample_stride = c.at("sample_stride").get<int>();
    const auto& o = j.at("outcome");
    std::string kind = o.at("kind").get<std::string>();
    if (kind == "BlownUp") m.outcome.kind = OutcomeKind::BlownUp;
    else if (kind == "Converged") m.outcome.kind = OutcomeKind::Converged;
    else if (kind == "ReachedTMax") m.outcome.kind = OutcomeKind::ReachedTMax;
    else throw ParseError("manifest: unknown outcome kind '" + kind + "'");
    m.outcome.time = o.at("time").get<double>();
    m.outcome.dt_underflow = o.at("dt_underflow").get<bool>();
    if (j.contains("blowup_estimate"))
      m.blowup_estimate = j.at("blowup_estimate").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("manifest: ") + e.what());
  }
  return m;
}

std::string trajectory_csv(const Trajectory& traj, const WeightedGraph& g) {
  if (traj.times.empty())
    throw std::logic_error("write_trajectory: empty trajectory");
  if (traj.measures.front().size() != g.num_vertices())
    throw std::invalid_argument("write_trajectory: graph/trajectory mismatch");
  std::string out = "t";
  for (const auto& l : g.labels()) out += ",m:" + l;
  for (const auto& l : g.labels()) out += ",ric:" + l;
  out += "\n";
  for (size_t i = 0; i < traj.times.size(); ++i) {
    out += fmt17(traj.times[i]);
    for (Vertex x = 0; x < g.num_vertices(); ++x)
      out += "," + fmt17(traj.measures[i][x]);
    for (Vertex x = 0; x < g.num_vertices(); ++x)
      out += "," + fmt17(traj.curvatures[i][x]);
    out += "\n";
  }
  return out;
}

std::string manifest_path_for(const std::string& csv_path) {
  const std::string suffix = ".csv";
  if (csv_path.size() > suffix.size() &&
      csv_path.compare(csv_path.size() - suffix.size(), suffix.size(), suffix) == 0)
    return csv_path.substr(0, csv_path.size() - suffix.size()) + ".manifest.json";
  return csv_path + ".manifest.json";
}

void write_trajectory(const Trajectory& traj, const WeightedGraph& g,
                      const std::string& csv_path, const RunManifest& manifest) {
  write_file(csv_path, trajectory_csv(traj, g));
  write_file(manifest_path_for(csv_path), manifest_to_json(manifest).dump(2) + "\n");
}

ordered_json report_to_json(const CheckReport& report) {
  ordered_json j;
  j["name"] = report.name;
  j["passed"] = report.passed;
  ordered_json v = ordered_json::array();
  for (const auto& rec : report.violations) {
    ordered_json r;
    r["time"] = rec.time;
    r["quantity"] = rec.quantity;
    r["threshold"] = rec.threshold;
    v.push_back(std::move(r));
  }
  j["violations"] = std::move(v);
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace ricciflow

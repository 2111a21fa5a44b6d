#include <chrono>
#include <cstdio>
#include <ctime>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ricciflow/analysis.hpp"
#include "ricciflow/closed_forms.hpp"
#include "ricciflow/flow.hpp"
#include "ricciflow/io.hpp"

namespace {

using nlohmann::ordered_json;
using namespace ricciflow;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GraphOptions {
  std::string file;
  int cycle = 0;
  bool tree_t3 = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--graph", file, "graph document (JSON)");
    cmd->add_option("--cycle", cycle, "cycle of length K (K >= 3)");
    cmd->add_flag("--tree-t3", tree_t3, "the 10-vertex tree with 6 boundary leaves");
  }

  ParsedGraph resolve() const {
    int given = (!file.empty()) + (cycle != 0) + tree_t3;
    if (given != 1)
      throw UsageError("give exactly one of --graph, --cycle, --tree-t3");
    if (!file.empty()) return parse_graph(read_file(file));
    if (tree_t3) return ParsedGraph{make_tree_t3(), std::nullopt};
    return ParsedGraph{make_cycle(cycle), std::nullopt};
  }

  std::string source() const {
    if (!file.empty()) return file;
    if (tree_t3) return "tree_t3";
    return "cycle:" + std::to_string(cycle);
  }
};

Dimension parse_dimension(const std::string& s) {
  if (s == "inf") return Dimension::infinite();
  try {
    return Dimension::finite(std::stod(s));
  } catch (const std::invalid_argument&) {
    throw UsageError("--dimension expects 'inf' or a positive number");
  }
}

bool looks_inline(const std::string& s) {
  return s.find_first_not_of("0123456789.,+-eE ") == std::string::npos;
}

VertexMeasure resolve_measure(const std::string& spec, const ParsedGraph& pg) {
  if (spec.empty()) {
    if (pg.measure) return *pg.measure;
    return VertexMeasure::uniform(pg.graph.num_vertices());
  }
  if (looks_inline(spec))
    return parse_measure_inline(spec, pg.graph.num_vertices());
  return parse_measure_json(read_file(spec), pg.graph);
}

std::string utc_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

int cmd_curvature(const GraphOptions& gopts, const std::string& measure_spec,
                  const std::string& dimension_spec) {
  ParsedGraph pg = gopts.resolve();
  VertexMeasure m = resolve_measure(measure_spec, pg);
  Dimension n = parse_dimension(dimension_spec);
  std::vector<double> ric = ricci_all(pg.graph, m, n);
  ordered_json out;
  for (Vertex x = 0; x < pg.graph.num_vertices(); ++x)
    out[pg.graph.label(x)] = ric[x];
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_flow(const GraphOptions& gopts, const std::string& m0_spec,
             const FlowConfig& cfg, const std::string& out_path,
             const std::string& command) {
  ParsedGraph pg = gopts.resolve();
  VertexMeasure m0 = resolve_measure(m0_spec, pg);
  Trajectory traj = integrate(pg.graph, m0, cfg);

  RunManifest manifest;
  manifest.command = command;
  manifest.graph_source = gopts.source();
  manifest.timestamp = utc_timestamp();
  manifest.config = cfg;
  manifest.outcome = traj.outcome;
  if (traj.outcome.kind == OutcomeKind::BlownUp)
    manifest.blowup_estimate = estimate_blowup_time(traj);

  if (!out_path.empty()) write_trajectory(traj, pg.graph, out_path, manifest);
  std::cout << manifest_to_json(manifest).dump(2) << "\n";
  return kExitOk;
}

int cmd_phase_c3(double grid_min, double grid_max, int steps,
                 const std::string& out_path) {
  if (steps < 2) throw UsageError("--steps must be at least 2");
  if (!(grid_max > grid_min)) throw UsageError("--grid-max must exceed --grid-min");
  std::vector<std::pair<double, double>> grid;
  grid.reserve(static_cast<size_t>(steps) * steps);
  const double h = (grid_max - grid_min) / (steps - 1);
  for (int i = 0; i < steps; ++i)
    for (int j = 0; j < steps; ++j)
      grid.push_back({grid_min + h * i, grid_min + h * j});

  std::string csv = "a,b,da_dt,db_dt,feasible\n";
  char buf[160];
  for (const PhasePoint& p : phase_field_c3(grid)) {
    if (p.feasible)
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,1\n", p.a, p.b,
                    p.da, p.db);
    else
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,nan,nan,0\n", p.a, p.b);
    csv += buf;
  }
  write_file(out_path, csv);
  return kExitOk;
}

int cmd_verify(const std::string& suite) {
  std::vector<CheckReport> reports = run_suite(suite);
  ordered_json arr = ordered_json::array();
  bool all_passed = true;
  for (const CheckReport& r : reports) {
    arr.push_back(report_to_json(r));
    all_passed = all_passed && r.passed;
    std::fprintf(stderr, "[%s] %s (%zu violation%s)\n", r.passed ? "PASS" : "FAIL",
                 r.name.c_str(), r.violations.size(),
                 r.violations.size() == 1 ? "" : "s");
  }
  std::cout << arr.dump(2) << "\n";
  return all_passed ? kExitOk : kExitCheckFailed;
}

int cmd_generate(const std::string& family, int k, const std::string& out_path) {
  WeightedGraph g = [&] {
    if (family == "cycle") return make_cycle(k);
    if (family == "path") return make_path(k);
    if (family == "complete") return make_complete(k);
    if (family == "star") return make_star(k);
    if (family == "tree_t3") return make_tree_t3();
    throw UsageError("--family expects cycle|path|complete|star|tree_t3");
  }();
  std::string doc = graph_to_json(g).dump(2) + "\n";
  if (out_path.empty())
    std::cout << doc;
  else
    write_file(out_path, doc);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bakry-Emery curvature and Ricci flow on finite weighted graphs"};
  app.require_subcommand(1);

  auto* curvature = app.add_subcommand("curvature", "per-vertex curvature as JSON");
  GraphOptions curv_graph;
  curv_graph.attach(curvature);
  std::string curv_measure, curv_dim = "inf";
  curvature->add_option("--measure", curv_measure,
                        "vertex weights: comma list in vertex order, or JSON file");
  curvature->add_option("--dimension", curv_dim, "'inf' (default) or a positive number");

  auto* flow = app.add_subcommand("flow", "integrate the curvature flow");
  GraphOptions flow_graph;
  flow_graph.attach(flow);
  std::string flow_m0, flow_out, flow_dim = "inf";
  FlowConfig cfg;
  flow->add_option("--m0", flow_m0, "initial weights: comma list or JSON file");
  flow->add_flag("--normalized", cfg.normalized, "volume-preserving variant");
  flow->add_option("--t-max", cfg.t_max, "integration horizon");
  flow->add_option("--rtol", cfg.rtol, "relative step tolerance");
  flow->add_option("--atol", cfg.atol, "absolute step tolerance");
  flow->add_option("--dimension", flow_dim, "'inf' (default) or a positive number");
  flow->add_option("--sample-stride", cfg.sample_stride, "snapshot every Nth step");
  flow->add_option("--out", flow_out, "trajectory CSV path (manifest written beside)");

  auto* phase = app.add_subcommand("phase-c3", "normalized C3 phase field sampler");
  double grid_min = 2.05, grid_max = 7.025;
  int grid_steps = 200;
  std::string phase_out;
  phase->add_option("--grid-min", grid_min, "smallest sampled weight");
  phase->add_option("--grid-max", grid_max, "largest sampled weight");
  phase->add_option("--steps", grid_steps, "grid points per axis");
  phase->add_option("--out", phase_out, "output CSV path")->required();

  auto* verify = app.add_subcommand("verify", "run the verification harness");
  std::string suite = "all";
  verify->add_option("--suite", suite, "t3|c3|c4|ck|normalized|all");

  auto* gen = app.add_subcommand("generate", "emit a graph document");
  std::string family, gen_out;
  int gen_k = 0;
  gen->add_option("--family", family, "cycle|path|complete|star|tree_t3")->required();
  gen->add_option("-k,--size", gen_k, "family size parameter");
  gen->add_option("--out", gen_out, "output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (curvature->parsed()) return cmd_curvature(curv_graph, curv_measure, curv_dim);
    if (flow->parsed()) {
      cfg.dimension = parse_dimension(flow_dim);
      return cmd_flow(flow_graph, flow_m0, cfg, flow_out, join_args(argc, argv));
    }
    if (phase->parsed()) return cmd_phase_c3(grid_min, grid_max, grid_steps, phase_out);
    if (verify->parsed()) return cmd_verify(suite);
    if (gen->parsed()) return cmd_generate(family, gen_k, gen_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}

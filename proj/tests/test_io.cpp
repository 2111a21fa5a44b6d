#include <algorithm>
#include <sstream>

#include <doctest.h>

#include "ricciflow/flow.hpp"
#include "ricciflow/graph.hpp"
#include "ricciflow/io.hpp"

using namespace ricciflow;

TEST_CASE("graph document parsing") {
  const std::string triangle = R"({
    "vertices": ["x0", "x1", "x2"],
    "edges": [{"u": "x0", "v": "x1"}, {"u": "x1", "v": "x2", "w": 1.0},
              {"u": "x2", "v": "x0"}],
    "measure": {"x0": 2, "x1": 3, "x2": 4}
  })";
  ParsedGraph pg = parse_graph(triangle);
  CHECK(pg.graph.num_vertices() == 3);
  CHECK(pg.graph.edges().size() == 3);
  for (const Edge& e : pg.graph.edges()) CHECK(e.w == 1.0);  // default weight
  REQUIRE(pg.measure.has_value());
  CHECK(pg.measure->values() == std::vector<double>{2, 3, 4});
}

TEST_CASE("graph document diagnostics name the offending key") {
  auto message_of = [](const std::string& doc) {
    try {
      parse_graph(doc);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };

  CHECK(message_of("{") .find("invalid JSON") != std::string::npos);
  CHECK(message_of(R"({"edges": []})").find("vertices") != std::string::npos);
  CHECK(message_of(R"({"vertices": ["a"], "edges": [{"u": "a", "v": "a"}]})")
            .find("self-loop") != std::string::npos);
  CHECK(message_of(
            R"({"vertices": ["a","b"], "edges": [{"u":"a","v":"b"},{"u":"b","v":"a"}]})")
            .find("edges[1]") != std::string::npos);
  CHECK(message_of(
            R"({"vertices": ["a","b"], "edges": [{"u":"a","v":"b","w":1},{"u":"b","v":"a","w":2}]})")
            .find("asymmetric") != std::string::npos);
  CHECK(message_of(
            R"({"vertices": ["a","b"], "edges": [{"u":"a","v":"b","w":-1}]})")
            .find("edges[0].w") != std::string::npos);
  CHECK(message_of(
            R"({"vertices": ["a","b","c"], "edges": [{"u":"a","v":"b"}]})")
            .find("not connected") != std::string::npos);
  CHECK(message_of(
            R"({"vertices": ["a","b"], "edges": [{"u":"a","v":"b"}], "measure": {"a": 0, "b": 1}})")
            .find("measure.a") != std::string::npos);
  CHECK(message_of(
            R"({"vertices": ["a","b"], "edges": [{"u":"a","v":"b"}], "measure": {"a": 1}})")
            .find("missing vertex 'b'") != std::string::npos);
  CHECK(message_of(
            R"({"vertices": ["a","b"], "edges": [{"u":"a","v":"z"}]})")
            .find("unknown vertex 'z'") != std::string::npos);
}

TEST_CASE("generate -> serialize -> parse round-trips the graph") {
  for (const WeightedGraph& g : {make_tree_t3(), make_cycle(5)}) {
    VertexMeasure m = VertexMeasure::uniform(g.num_vertices(), 2.5);
    std::string doc = graph_to_json(g, &m).dump(2);
    ParsedGraph back = parse_graph(doc);
    CHECK(back.graph.labels() == g.labels());
    CHECK(back.graph.boundary() == g.boundary());
    REQUIRE(back.graph.edges().size() == g.edges().size());
    for (size_t i = 0; i < g.edges().size(); ++i) {
      CHECK(back.graph.edges()[i].u == g.edges()[i].u);
      CHECK(back.graph.edges()[i].v == g.edges()[i].v);
      CHECK(back.graph.edges()[i].w == g.edges()[i].w);
    }
    REQUIRE(back.measure.has_value());
    CHECK(back.measure->values() == m.values());
  }
}

TEST_CASE("inline measures") {
  CHECK(parse_measure_inline("2,3,4", 3).values() == std::vector<double>{2, 3, 4});
  CHECK(parse_measure_inline("0.5, 1.5, 2.5", 3).values() ==
        std::vector<double>{0.5, 1.5, 2.5});
  CHECK_THROWS_AS(parse_measure_inline("1,2", 3), ParseError);
  CHECK_THROWS_AS(parse_measure_inline("1,x,3", 3), ParseError);
  CHECK_THROWS_AS(parse_measure_inline("1,-2,3", 3), ParseError);
}

TEST_CASE("trajectory CSV layout and determinism") {
  WeightedGraph c3 = make_cycle(3);
  FlowConfig cfg;
  cfg.t_max = 20.0;
  Trajectory traj = integrate(c3, VertexMeasure({2, 3, 4}), cfg);
  std::string csv = trajectory_csv(traj, c3);

  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "t,m:0,m:1,m:2,ric:0,ric:1,ric:2");
  size_t rows = 0;
  for (std::string line; std::getline(lines, line);) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 6);
  }
  CHECK(rows == traj.times.size());

  // bit-identical across repeated runs with identical inputs
  Trajectory again = integrate(c3, VertexMeasure({2, 3, 4}), cfg);
  CHECK(trajectory_csv(again, c3) == csv);

  Trajectory empty;
  CHECK_THROWS_AS(trajectory_csv(empty, c3), std::logic_error);
}

TEST_CASE("converged run ends with vanishing curvature columns") {
  WeightedGraph c6 = make_cycle(6);
  FlowConfig cfg;
  cfg.t_max = 50.0;
  Trajectory traj = integrate(c6, VertexMeasure::uniform(6, 1.5), cfg);
  REQUIRE(traj.outcome.kind == OutcomeKind::Converged);
  for (double r : traj.curvatures.back()) CHECK(std::abs(r) < 1e-6);
}

TEST_CASE("manifest round-trip") {
  RunManifest m;
  m.command = "flow --cycle 3 --m0 2,3,4";
  m.graph_source = "cycle:3";
  m.timestamp = "2026-01-05T12:00:00Z";
  m.config.normalized = true;
  m.config.t_max = 42.0;
  m.config.rtol = 1e-9;
  m.config.dimension = Dimension::finite(4.0);
  m.config.sample_stride = 3;
  m.outcome.kind = OutcomeKind::BlownUp;
  m.outcome.time = 1.25;
  m.blowup_estimate = 1.2501;
  RunManifest back = manifest_from_json(manifest_to_json(m));
  CHECK(back == m);

  RunManifest plain;
  plain.command = "flow";
  plain.graph_source = "tree_t3";
  plain.timestamp = "t";
  CHECK(manifest_from_json(manifest_to_json(plain)) == plain);
}

TEST_CASE("manifest sibling path") {
  CHECK(manifest_path_for("run.csv") == "run.manifest.json");
  CHECK(manifest_path_for("a/b/traj.csv") == "a/b/traj.manifest.json");
  CHECK(manifest_path_for("noext") == "noext.manifest.json");
}

TEST_CASE("check report serialization") {
  CheckReport r;
  r.name = "demo";
  r.flag(1.0, 2.0, 3.0);
  auto j = report_to_json(r);
  CHECK(j["name"] == "demo");
  CHECK(j["passed"] == false);
  CHECK(j["violations"].size() == 1);
  CHECK(j["violations"][0]["quantity"] == 2.0);
}

#include <stdexcept>
#include <cmath>

#include <doctest.h>

#include "ricciflow/closed_forms.hpp"
#include "ricciflow/flow.hpp"
#include "ricciflow/graph.hpp"

using namespace ricciflow;

TEST_CASE("flow right-hand side") {
  FlowConfig cfg;
  WeightedGraph c6 = make_cycle(6);
  std::vector<double> r = rhs(c6, VertexMeasure::uniform(6, 1.3), cfg);
  for (double v : r) CHECK(std::abs(v) < 1e-13);

  FlowConfig norm = cfg;
  norm.normalized = true;
  WeightedGraph c3 = make_cycle(3);
  std::vector<double> fixed = rhs(c3, VertexMeasure({5, 5, 2}), norm);
  for (double v : fixed) CHECK(std::abs(v) < 1e-12);

  std::vector<double> any = rhs(c3, VertexMeasure({1.1, 2.7, 0.4}), norm);
  double sum = 0.0, inf = 0.0;
  for (double v : any) {
    sum += v;
    inf = std::max(inf, std::abs(v));
  }
  CHECK(std::abs(sum) <= 1e-13 * inf);
}

TEST_CASE("constant data on C6 converges immediately") {
  WeightedGraph c6 = make_cycle(6);
  FlowConfig cfg;
  cfg.t_max = 50.0;
  Trajectory traj = integrate(c6, VertexMeasure::uniform(6, 2.0), cfg);
  CHECK(traj.outcome.kind == OutcomeKind::Converged);
  CHECK(traj.outcome.time < 50.0);
  for (const VertexMeasure& m : traj.measures)
    for (double v : m.values()) CHECK(std::abs(v - 2.0) <= 1e-9);
}

TEST_CASE("C3 from (2,3,4) blows up within the stated bound") {
  WeightedGraph c3 = make_cycle(3);
  FlowConfig cfg;
  cfg.t_max = 20.0;
  Trajectory traj = integrate(c3, VertexMeasure({2, 3, 4}), cfg);
  REQUIRE(traj.outcome.kind == OutcomeKind::BlownUp);
  CHECK_FALSE(traj.outcome.dt_underflow);
  double t_hat = estimate_blowup_time(traj);
  CHECK(t_hat >= traj.times.back());
  CHECK(t_hat <= 16.0);
  CHECK(t_hat > 1.0);  // collapse takes some time from these weights

  // structural trajectory invariants
  CHECK(traj.times.front() == 0.0);
  for (size_t i = 1; i < traj.times.size(); ++i)
    CHECK(traj.times[i] > traj.times[i - 1]);
  for (const VertexMeasure& m : traj.measures)
    CHECK(m.min() > 0.0);
  CHECK(traj.measures.size() == traj.times.size());
  CHECK(traj.curvatures.size() == traj.times.size());
}

TEST_CASE("blow-up estimator on an exactly linear m_min^2") {
  Trajectory traj;
  traj.config = FlowConfig{};
  for (int i = 0; i <= 49; ++i) {
    double t = 0.01 * i;
    traj.times.push_back(t);
    traj.measures.emplace_back(
        std::vector<double>{std::sqrt(1.0 - 2.0 * t), 2.0, 2.0});
    traj.curvatures.push_back({0.0, 0.0, 0.0});
  }
  traj.outcome.kind = OutcomeKind::BlownUp;
  traj.outcome.time = traj.times.back();
  CHECK(estimate_blowup_time(traj) == doctest::Approx(0.5).epsilon(1e-6));

  traj.outcome.kind = OutcomeKind::ReachedTMax;
  CHECK_THROWS_AS(estimate_blowup_time(traj), std::logic_error);
}

TEST_CASE("tighter tolerances barely move a converged C5 run") {
  WeightedGraph c5 = make_cycle(5);
  VertexMeasure m0({2.0, 1.0 / 3.0, 3.0, 1.0, 2.5});
  FlowConfig cfg;
  cfg.t_max = 100.0;
  Trajectory coarse = integrate(c5, m0, cfg);
  FlowConfig half = cfg;
  half.rtol /= 2.0;
  half.atol /= 2.0;
  Trajectory fine = integrate(c5, m0, half);
  REQUIRE(coarse.outcome.kind == OutcomeKind::Converged);
  REQUIRE(fine.outcome.kind == OutcomeKind::Converged);
  for (Vertex x = 0; x < 5; ++x)
    CHECK(std::abs(coarse.measures.back()[x] - fine.measures.back()[x]) <
          10.0 * cfg.rtol * m0.max());
}

TEST_CASE("normalized runs preserve the volume") {
  WeightedGraph c4 = make_cycle(4);
  FlowConfig cfg;
  cfg.normalized = true;
  cfg.t_max = 10.0;
  Trajectory traj = integrate(c4, VertexMeasure({2, 3, 4, 5}), cfg);
  for (const VertexMeasure& m : traj.measures)
    CHECK(std::abs(m.volume() - 14.0) <= 1e-8);
}

TEST_CASE("integration input contracts") {
  WeightedGraph c3 = make_cycle(3);
  FlowConfig cfg;
  cfg.t_max = -1.0;
  CHECK_THROWS_AS(integrate(c3, VertexMeasure::uniform(3), cfg),
                  std::invalid_argument);
  FlowConfig ok;
  CHECK_THROWS_AS(integrate(c3, VertexMeasure::uniform(4), ok),
                  std::invalid_argument);
  CHECK_THROWS_AS(VertexMeasure({2.0, -3.0, 1.0}), std::invalid_argument);
}

TEST_CASE("sample stride still records the final state") {
  WeightedGraph c3 = make_cycle(3);
  FlowConfig cfg;
  cfg.t_max = 20.0;
  cfg.sample_stride = 25;
  Trajectory traj = integrate(c3, VertexMeasure({2, 3, 4}), cfg);
  CHECK(traj.outcome.kind == OutcomeKind::BlownUp);
  CHECK(traj.times.back() == traj.outcome.time);
  FlowConfig dense = cfg;
  dense.sample_stride = 1;
  Trajectory full = integrate(c3, VertexMeasure({2, 3, 4}), dense);
  CHECK(traj.times.size() < full.times.size());
}

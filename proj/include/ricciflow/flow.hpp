#pragma once

#include <vector>

#include "ricciflow/curvature.hpp"
#include "ricciflow/graph.hpp"

namespace ricciflow {

struct FlowConfig {
  Dimension dimension = Dimension::infinite();
  bool normalized = false;
  double t_max = 10.0;
  double rtol = 1e-8;
  double atol = 1e-10;
  double dt_init = 1e-3;
  double dt_min = 1e-12;
  double dt_max = 1.0;
  // Blow-up is declared when min_x m(t,x) < blowup_fraction * min m0.
  double blowup_fraction = 1e-6;
  double conv_rhs_tol = 1e-9;
  double conv_spread_tol = 1e-8;
  int conv_window = 10;
  int sample_stride = 1;

  bool operator==(const FlowConfig&) const = default;
};

enum class OutcomeKind { BlownUp, Converged, ReachedTMax };

struct FlowOutcome {
  OutcomeKind kind = OutcomeKind::ReachedTMax;
  double time = 0.0;
  // Set when the step size underflowed dt_min while min m had not collapsed
  // below 1e-3 * min m0 (dt underflow without a blow-up signature).
  bool dt_underflow = false;

  bool operator==(const FlowOutcome&) const = default;
};

struct Trajectory {
  std::vector<double> times;                    // strictly increasing, starts at 0
  std::vector<VertexMeasure> measures;          // strictly positive snapshots
  std::vector<std::vector<double>> curvatures;  // ricci_all at each snapshot
  FlowOutcome outcome;
  FlowConfig config;  // echo of the run configuration
};

// Flow right-hand side at measure m: -Ric, plus the mean curvature added to
// every component when cfg.normalized (the normalized RHS sums to zero).
std::vector<double> rhs(const WeightedGraph& g, const VertexMeasure& m,
                        const FlowConfig& cfg);

// Integrates d/dt m = rhs with an embedded Dormand-Prince RK5(4) pair and PI
// step control on err = max_i |m5_i - m4_i| / (atol + rtol |m5_i|). Steps with
// a nonpositive trial state or err > 1 are rejected (dt halved). Terminates
// BlownUp when the measure collapses or dt underflows, Converged when the RHS
// (and, unnormalized, the spread) stays under the configured tolerances for
// conv_window consecutive accepted steps, else ReachedTMax.
Trajectory integrate(const WeightedGraph& g, const VertexMeasure& m0,
                     const FlowConfig& cfg);

// Blow-up time extrapolated by fitting min_x m(t,x)^2 linearly in t over the
// last conv_window samples. Requires a BlownUp outcome; never earlier than
// the last sampled time.
double estimate_blowup_time(const Trajectory& traj);

}  // namespace ricciflow

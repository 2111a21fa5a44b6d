#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "ricciflow/flow.hpp"
#include "ricciflow/graph.hpp"

namespace ricciflow {

struct ViolationRecord {
  double time = 0.0;
  double quantity = 0.0;
  double threshold = 0.0;
};

struct CheckReport {
  std::string name;
  bool passed = true;
  std::vector<ViolationRecord> violations;

  void flag(double time, double quantity, double threshold) {
    passed = false;
    violations.push_back({time, quantity, threshold});
  }
};

enum class BlowupFamily { T3, C3, C4 };

// Stated upper bounds on the maximal existence time:
//   T3: (min over boundary m0)^2 / 2,  C3: (max m0)^2,  C4: (max m0)^2 / 4.
double blowup_bound(BlowupFamily family, const VertexMeasure& m0);

enum class ExtremaCheck { MaxNonIncreasing, MinNonDecreasing, MaxStrictlyDecreasing };
CheckReport check_extrema_monotone(const Trajectory& traj, ExtremaCheck expect,
                                   double drift_tol);

enum class OrderMode { StrictMax, StrictMin };
// The vertex must hold its strict extremal position at every snapshot.
// Precondition: trajectory on C3 and the vertex initially strictly extremal.
CheckReport check_order_preserved(const Trajectory& traj, Vertex vertex,
                                  OrderMode mode);

// Initially equal pair stays equal within tol at every snapshot.
CheckReport check_pair_equality(const Trajectory& traj, Vertex i, Vertex j,
                                double tol);

// Every snapshot stays inside [min m0 - drift, max m0 + drift] componentwise.
CheckReport check_within_initial_range(const Trajectory& traj, double drift_tol);

// Volume |sum m(t) - sum m0| <= 1e-8 at all snapshots; normalized runs only.
CheckReport check_volume(const Trajectory& traj);

// The three equal-curvature rays of the normalized C3 flow, up to scale.
std::array<std::array<double, 3>, 3> c3_normalized_fixed_points();
// max_{i,j} |ric_c3(m,i) - ric_c3(m,j)|.
double c3_residual(const std::vector<double>& m);

struct PhasePoint {
  double a = 0.0;
  double b = 0.0;
  double da = 0.0;  // d m(0)/dt of the normalized flow
  double db = 0.0;  // d m(1)/dt
  bool feasible = false;
};

// Samples the normalized C3 field over (m(0), m(1)) pairs with m(2) solved
// from sum_i 1/m(i) = 1; infeasible grid points are marked, not dropped.
std::vector<PhasePoint> phase_field_c3(
    const std::vector<std::pair<double, double>>& grid);

// Verification suites behind the `verify` subcommand. Suite names:
// t3, c3, c4, ck, normalized, all.
std::vector<CheckReport> run_suite(const std::string& name);

}  // namespace ricciflow

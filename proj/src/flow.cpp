#include "ricciflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ricciflow {

namespace {

// Dormand-Prince 5(4) tableau; row 7 of `a` doubles as the 5th order weights
// (FSAL: k7 = f(t+h, y5) is k1 of the next step).
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kB4[7] = {5179.0 / 57600,  0.0,          7571.0 / 16695,
                           393.0 / 640,     -92097.0 / 339200,
                           187.0 / 2100,    1.0 / 40};

// PI controller exponents for a 5th order error estimate.
constexpr double kSafety = 0.9;
constexpr double kAlpha = 0.7 / 5.0;
constexpr double kBeta = 0.4 / 5.0;
constexpr double kShrinkLimit = 0.2;
constexpr double kGrowLimit = 5.0;

// min m below this fraction of min m0 counts as a blow-up signature when the
// step size underflows.
constexpr double kCollapseSignature = 1e-3;

bool positive(const std::vector<double>& v) {
  for (double x : v)
    if (!(x > 0.0)) return false;
  return true;
}

std::vector<double> rhs_raw(const WeightedGraph& g, const std::vector<double>& m,
                            const FlowConfig& cfg) {
  std::vector<double> r = ricci_all(g, VertexMeasure(m), cfg.dimension);
  if (cfg.normalized) {
    double mean = 0.0;
    for (double v : r) mean += v;
    mean /= static_cast<double>(r.size());
    for (double& v : r) v = -v + mean;
  } else {
    for (double& v : r) v = -v;
  }
  return r;
}

}  // namespace

std::vector<double> rhs(const WeightedGraph& g, const VertexMeasure& m,
                        const FlowConfig& cfg) {
  return rhs_raw(g, m.values(), cfg);
}

Trajectory integrate(const WeightedGraph& g, const VertexMeasure& m0,
                     const FlowConfig& cfg) {
  const int nv = g.num_vertices();
  if (m0.size() != nv)
    throw std::invalid_argument("integrate: initial measure domain mismatch");
  if (!(cfg.t_max > 0.0)) throw std::invalid_argument("integrate: t_max <= 0");

  Trajectory traj;
  traj.config = cfg;
  const double min0 = m0.min();
  const double blowup_floor = cfg.blowup_fraction * min0;

  std::vector<double> m = m0.values();
  double t = 0.0;
  double dt = std::min(cfg.dt_init, cfg.dt_max);
  double err_prev = 1.0;
  int conv_count = 0;
  int since_sample = 0;
  bool recorded_last = false;

  auto record = [&](const std::vector<double>& state, double time) {
    traj.times.push_back(time);
    traj.measures.emplace_back(state);
    traj.curvatures.push_back(ricci_all(g, VertexMeasure(state), cfg.dimension));
  };
  record(m, 0.0);
  recorded_last = true;

  std::vector<double> k[7];
  k[0] = rhs_raw(g, m, cfg);
  std::vector<double> stage(nv), y5(nv), y4(nv);

  bool done = false;
  while (!done && t < cfg.t_max) {
    dt = std::min(dt, cfg.t_max - t);
    bool reject = false;
    double err = 0.0;

    for (int s = 1; s < 7 && !reject; ++s) {
      std::vector<double>& target = (s == 6) ? y5 : stage;
      for (int i = 0; i < nv; ++i) {
        double acc = m[i];
        for (int j = 0; j < s; ++j) acc += dt * kA[s][j] * k[j][i];
        target[i] = acc;
      }
      if (!positive(target)) {
        reject = true;
        break;
      }
      if (s < 6) {
        k[s] = rhs_raw(g, stage, cfg);
      } else {
        k[6] = rhs_raw(g, y5, cfg);  // FSAL derivative at the 5th order state
        for (int i = 0; i < nv; ++i) {
          double acc = m[i];
          for (int j = 0; j < 7; ++j) acc += dt * kB4[j] * k[j][i];
          y4[i] = acc;
        }
        err = 0.0;
        for (int i = 0; i < nv; ++i) {
          double sc = cfg.atol + cfg.rtol * std::abs(y5[i]);
          err = std::max(err, std::abs(y5[i] - y4[i]) / sc);
        }
        if (err > 1.0) reject = true;
      }
    }

    if (reject) {
      dt *= 0.5;
      if (dt < cfg.dt_min) {
        double mn = *std::min_element(m.begin(), m.end());
        traj.outcome.kind = OutcomeKind::BlownUp;
        traj.outcome.time = t;
        traj.outcome.dt_underflow = mn >= kCollapseSignature * min0;
        done = true;
      }
      continue;
    }

    t += dt;
    m = y5;
    k[0] = k[6];
    recorded_last = false;
    if (++since_sample >= cfg.sample_stride) {
      record(m, t);
      recorded_last = true;
      since_sample = 0;
    }

    double mn = *std::min_element(m.begin(), m.end());
    double mx = *std::max_element(m.begin(), m.end());
    if (mn < blowup_floor) {
      traj.outcome.kind = OutcomeKind::BlownUp;
      traj.outcome.time = t;
      done = true;
      break;
    }
    double rhs_inf = 0.0;
    for (double v : k[0]) rhs_inf = std::max(rhs_inf, std::abs(v));
    bool settled = rhs_inf < cfg.conv_rhs_tol &&
                   (cfg.normalized || mx - mn < cfg.conv_spread_tol);
    conv_count = settled ? conv_count + 1 : 0;
    if (conv_count >= cfg.conv_window) {
      traj.outcome.kind = OutcomeKind::Converged;
      traj.outcome.time = t;
      done = true;
      break;
    }

    double factor = kGrowLimit;
    if (err > 0.0) {
      factor = kSafety * std::pow(err, -kAlpha) * std::pow(err_prev, kBeta);
      factor = std::clamp(factor, kShrinkLimit, kGrowLimit);
    }
    err_prev = std::max(err, 1e-10);
    dt = std::min(dt * factor, cfg.dt_max);
    if (dt < cfg.dt_min) {
      traj.outcome.kind = OutcomeKind::BlownUp;
      traj.outcome.time = t;
      traj.outcome.dt_underflow = mn >= kCollapseSignature * min0;
      done = true;
    }
  }

  if (!done) {
    traj.outcome.kind = OutcomeKind::ReachedTMax;
    traj.outcome.time = t;
  }
  if (!recorded_last) record(m, t);
  return traj;
}

double estimate_blowup_time(const Trajectory& traj) {
  if (traj.outcome.kind != OutcomeKind::BlownUp)
    throw std::logic_error("estimate_blowup_time: outcome is not BlownUp");
  const size_t n = traj.times.size();
  const size_t window =
      std::min<size_t>(n, std::max(traj.config.conv_window, 2));
  const double t_last = traj.times.back();
  if (n < 2) return t_last;

  // least-squares fit of y = min m(t)^2 against (t - t_last)
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (size_t i = n - window; i < n; ++i) {
    double x = traj.times[i] - t_last;
    double mn = traj.measures[i].min();
    double y = mn * mn;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double w = static_cast<double>(window);
  const double denom = w * sxx - sx * sx;
  if (denom == 0.0) return t_last;
  const double slope = (w * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / w;
  if (slope >= 0.0) return t_last;
  return std::max(t_last, t_last - intercept / slope);
}

}  // namespace ricciflow

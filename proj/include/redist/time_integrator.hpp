#pragma once

#include "redist/detector.hpp"
#include "redist/discretization.hpp"
#include "redist/fv_subcell.hpp"

#include <functional>
#include <vector>

namespace redist {

/// Six-deep time stencil of one node: (t, u, v) triples, oldest first.
/// Once the sign change of the relevant field is bracketed, the window keeps
/// two later samples and freezes, holding {n-2 .. n+3} around the crossing.
struct NodeHistory {
  static constexpr int kCap = 6;
  double t[kCap];
  double u[kCap];
  double v[kCap];
  int count = 0;

  // crossing bookkeeping for the relevant field (u if phi0 > 0, v if < 0)
  int8_t tracks_u = 0; // -1: tracks v, +1: tracks u, 0: untracked (phi0 == 0)
  bool crossed = false;
  bool frozen = false;
  double bracket_lo = 0.0, bracket_hi = 0.0;

  void push_back(double time, double uu, double vv);
  void push_front(double time, double uu, double vv);
  double relevant(int i) const { return tracks_u >= 0 ? u[i] : v[i]; }
};

struct HistoryBuffer {
  std::vector<NodeHistory> nodes; // K * Np, element-major
  double final_time = 0.0;
};

/// Five-stage low-storage explicit RK4 coefficients.
struct Lserk4 {
  static const double a[5];
  static const double b[5];
  static const double c[5];
};

/// Generic LSERK4 driver for ODE tests: y' = f(t, y).
template <class State, class Rhs>
State lserk4_integrate(State y, const Rhs& f, double t0, double dt, int steps) {
  State k = 0.0 * y;
  for (int n = 0; n < steps; ++n) {
    for (int s = 0; s < 5; ++s) {
      k = Lserk4::a[s] * k + dt * f(t0 + (n + Lserk4::c[s]) * dt, y);
      y = y + Lserk4::b[s] * k;
    }
  }
  return y;
}

/// dt = cfl * min_e(inradius(e)) / (N+1)^2 with unit characteristic speed.
double compute_dt(const Mesh& mesh, int order, double cfl);

struct AdvanceConfig {
  double final_time = 1.0;
  double cfl = 1.0;
  LimiterMode limiter = LimiterMode::Auto;
  double detector_threshold = 1.0;
  int fv_order = 2;
  bool freeze_band = false;   // opt-in spatial freezing for near-distance data
  double band_eps = std::numeric_limits<double>::infinity();
  bool verbose = false;
  int observer_stride = 0;    // 0: never call the observer
};

struct DualFlowState {
  FieldData u, v;
  std::vector<uint8_t> troubled; // active representation mask (shared by u and v)
  std::vector<uint8_t> frozen;
  double t = 0.0;
  int step = 0;
  int troubled_count = 0;
};

/// Called at selected step boundaries with the current state and history.
using StepObserver = std::function<void(const DualFlowState&, const HistoryBuffer&)>;

struct AdvanceResult {
  DualFlowState state;
  HistoryBuffer history;
  double dt = 0.0;
  int steps = 0;
  double final_troubled_fraction = 0.0;
  int max_troubled_count = 0;
};

/// Dual Eikonal flows u(x,0) = phi0, v(x,0) = -phi0 advanced to final_time
/// with per-step regularity detection, representation switching, and
/// crossing-time history recording (with the mirrored synthetic samples
/// u^{-1} = -v^1, u^{-2} = -v^2 ahead of t = 0).
AdvanceResult advance(const Discretization& d, const Matrix& phi0, const AdvanceConfig& cfg,
                      const StepObserver& observer = {});

} // namespace redist

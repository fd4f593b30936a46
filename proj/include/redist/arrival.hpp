#pragma once

#include "redist/time_integrator.hpp"
#include "redist/types.hpp"

#include <vector>

namespace redist {

/// Interpolating polynomial in Newton form: nodes in insertion order,
/// p(t) = c0 + c1 (t-x0) + c2 (t-x0)(t-x1) + ...
struct NewtonPoly {
  std::vector<double> nodes;
  std::vector<double> coeffs;

  double value(double t) const;
  double derivative(double t) const;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// ENO interpolant around the bracketing interval [times[bracket],
/// times[bracket+1]]. The stencil starts from the bracket pair and grows
/// up to cubic order, each extension taking the side whose divided
/// difference is smaller in magnitude (ties to the left); with fewer
/// samples available the order degrades gracefully (minimum: linear).
NewtonPoly eno_interpolant(const std::vector<double>& times, const std::vector<double>& values,
                           int bracket);

/// Root of p in [lo, hi] (p must change sign): Newton iteration from the
/// midpoint with a bisection safeguard; the result stays inside the bracket.
double find_root(const NewtonPoly& p, double lo, double hi);

struct ArrivalResult {
  Matrix phi;                 // Np x K signed distance
  std::vector<uint8_t> resolved; // per node, element-major (root found vs clamped)
};

/// First-arrival reconstruction: per node the tracked flow's first sign
/// change is interpolated in time and the root becomes +/- the distance.
/// Nodes without a crossing are clamped to sign(phi0) * clamp_time.
ArrivalResult reconstruct_distance(const HistoryBuffer& hist, const Matrix& phi0,
                                   double clamp_time);

} // namespace redist

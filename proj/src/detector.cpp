#include "redist/detector.hpp"

#include "redist/parallel.hpp"

#include <cmath>
#include <iostream>
#include <limits>

namespace redist {

LimiterMode parse_limiter_mode(const std::string& name) {
  if (name == "auto") return LimiterMode::Auto;
  if (name == "on") return LimiterMode::AlwaysOn;
  if (name == "off") return LimiterMode::Off;
  throw ConfigError("unknown limiter mode: " + name + " (expected auto|on|off)");
}

std::string to_string(LimiterMode mode) {
  switch (mode) {
    case LimiterMode::Auto: return "auto";
    case LimiterMode::AlwaysOn: return "on";
    case LimiterMode::Off: return "off";
  }
  return "?";
}

double modal_decay_exponent(const Vector& nodal, const ReferenceElement& re) {
  const int n = re.order;
  Vector modal = re.vinv * nodal;
  const double scale = modal.norm();
  if (scale == 0.0) return std::numeric_limits<double>::infinity();

  Vector degree_max = Vector::Zero(n + 1);
  for (int m = 0; m < re.np; ++m) {
    const int k = re.mode_degree_i[static_cast<std::size_t>(m)] +
                  re.mode_degree_j[static_cast<std::size_t>(m)];
    degree_max(k) = std::max(degree_max(k), std::abs(modal(m)));
  }

  // Skyline pegging with a machine-scaled floor.
  const double floor_val = 1e-14 * scale;
  Vector skyline = degree_max;
  for (int k = n - 1; k >= 1; --k) skyline(k) = std::max(skyline(k), skyline(k + 1));
  for (int k = 1; k <= n; ++k) skyline(k) = std::max(skyline(k), floor_val);

  if (skyline(1) <= floor_val) return std::numeric_limits<double>::infinity();

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int k = 1; k <= n; ++k) {
    const double x = std::log(static_cast<double>(k));
    const double y = std::log(skyline(k));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(n);
  const double denom = m * sxx - sx * sx;
  const double slope = (m * sxy - sx * sy) / denom;
  return -slope;
}

RegularityReport detect(const Matrix& nodal, const ReferenceElement& re, LimiterMode mode,
                        double threshold) {
  const int k = static_cast<int>(nodal.cols());
  RegularityReport rep;
  rep.threshold = threshold;
  rep.decay_exponent = Vector::Constant(k, std::numeric_limits<double>::infinity());
  rep.troubled.assign(static_cast<std::size_t>(k), 0);

  if (mode == LimiterMode::Off) return rep;

  LimiterMode effective = mode;
  if (mode == LimiterMode::Auto && re.order < 3) {
    static bool warned = false;
    if (!warned) {
      std::cerr << "detector: auto mode needs order >= 3, falling back to always-on\n";
      warned = true;
    }
    effective = LimiterMode::AlwaysOn;
  }

  if (effective == LimiterMode::AlwaysOn) {
    rep.decay_exponent.setZero();
    rep.troubled.assign(static_cast<std::size_t>(k), 1);
    return rep;
  }

  parallel_for_each(static_cast<std::size_t>(k), [&](std::size_t e) {
    const Vector col = nodal.col(static_cast<Eigen::Index>(e));
    if (!col.allFinite()) {
      rep.decay_exponent(static_cast<Eigen::Index>(e)) = -std::numeric_limits<double>::infinity();
      rep.troubled[e] = 1;
      return;
    }
    const double s = modal_decay_exponent(col, re);
    rep.decay_exponent(static_cast<Eigen::Index>(e)) = s;
    rep.troubled[e] = s < threshold ? 1 : 0;
  });
  return rep;
}

} // namespace redist

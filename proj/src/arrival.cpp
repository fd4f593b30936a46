#include "redist/arrival.hpp"

#include "redist/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace redist {

double NewtonPoly::value(double t) const {
  const int n = static_cast<int>(coeffs.size());
  double p = coeffs[static_cast<std::size_t>(n - 1)];
  for (int i = n - 2; i >= 0; --i)
    p = coeffs[static_cast<std::size_t>(i)] + (t - nodes[static_cast<std::size_t>(i)]) * p;
  return p;
}

double NewtonPoly::derivative(double t) const {
  const int n = static_cast<int>(coeffs.size());
  double p = coeffs[static_cast<std::size_t>(n - 1)];
  double dp = 0.0;
  for (int i = n - 2; i >= 0; --i) {
    const double w = t - nodes[static_cast<std::size_t>(i)];
    dp = p + w * dp;
    p = coeffs[static_cast<std::size_t>(i)] + w * p;
  }
  return dp;
}

NewtonPoly eno_interpolant(const std::vector<double>& times, const std::vector<double>& values,
                           int bracket) {
  const int n = static_cast<int>(times.size());
  require(n >= 2, "eno_interpolant: need at least two samples");
  require(bracket >= 0 && bracket + 1 < n, "eno_interpolant: bracket out of range");
  for (int i = 0; i + 1 < n; ++i)
    require(times[static_cast<std::size_t>(i)] < times[static_cast<std::size_t>(i + 1)],
            "eno_interpolant: times must be strictly increasing");

  // Divided-difference table over contiguous ranges [i, i+len].
  auto dd = [&](int i, int len) {
    static thread_local std::vector<double> buf;
    buf.assign(values.begin() + i, values.begin() + i + len + 1);
    for (int order = 1; order <= len; ++order)
      for (int j = 0; j <= len - order; ++j)
        buf[static_cast<std::size_t>(j)] =
            (buf[static_cast<std::size_t>(j + 1)] - buf[static_cast<std::size_t>(j)]) /
            (times[static_cast<std::size_t>(i + j + order)] - times[static_cast<std::size_t>(i + j)]);
    return buf[0];
  };

  int lo = bracket, hi = bracket + 1;
  NewtonPoly p;
  p.nodes = {times[static_cast<std::size_t>(lo)], times[static_cast<std::size_t>(hi)]};
  p.coeffs = {values[static_cast<std::size_t>(lo)], dd(lo, 1)};

  for (int target = 2; target <= 3; ++target) {
    const bool can_left = lo > 0;
    const bool can_right = hi < n - 1;
    if (!can_left && !can_right) break;
    bool take_left;
    if (can_left && can_right) {
      take_left = std::abs(dd(lo - 1, target)) <= std::abs(dd(lo, target));
    } else {
      take_left = can_left;
    }
    if (take_left) {
      --lo;
      p.coeffs.push_back(dd(lo, target));
      p.nodes.push_back(times[static_cast<std::size_t>(lo)]);
    } else {
      ++hi;
      p.coeffs.push_back(dd(lo, target));
      p.nodes.push_back(times[static_cast<std::size_t>(hi)]);
    }
  }
  return p;
}

double find_root(const NewtonPoly& p, double lo, double hi) {
  double flo = p.value(lo);
  double fhi = p.value(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  require(flo * fhi < 0.0, "find_root: no sign change over the bracket");

  const double scale = std::max(std::abs(flo), std::abs(fhi));
  const double ftol = 1e-13 * scale;
  const double ttol = 1e-14 * (hi - lo);

  double a = lo, b = hi, fa = flo;
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double ft = p.value(t);
    if (std::abs(ft) < ftol) return t;
    if (fa * ft < 0.0)
      b = t;
    else {
      a = t;
      fa = ft;
    }

    double tn = t;
    const double dft = p.derivative(t);
    bool newton_ok = it < 25 && dft != 0.0;
    if (newton_ok) {
      tn = t - ft / dft;
      newton_ok = tn > a && tn < b;
    }
    if (!newton_ok) tn = 0.5 * (a + b);
    if (std::abs(tn - t) < ttol) return tn;
    t = tn;
  }
  return t;
}

ArrivalResult reconstruct_distance(const HistoryBuffer& hist, const Matrix& phi0,
                                   double clamp_time) {
  const int np = static_cast<int>(phi0.rows());
  const int k = static_cast<int>(phi0.cols());
  ArrivalResult out;
  out.phi.resize(np, k);
  out.resolved.assign(static_cast<std::size_t>(np) * static_cast<std::size_t>(k), 0);

  parallel_for_each(static_cast<std::size_t>(k), [&](std::size_t es) {
    const int e = static_cast<int>(es);
    for (int n = 0; n < np; ++n) {
      const std::size_t idx = static_cast<std::size_t>(e * np + n);
      const NodeHistory& h = hist.nodes[idx];
      const double p0 = phi0(n, e);
      if (p0 == 0.0) {
        out.phi(n, e) = 0.0;
        out.resolved[idx] = 1;
        continue;
      }
      const double sign = p0 > 0.0 ? 1.0 : -1.0;
      if (!h.crossed) {
        out.phi(n, e) = sign * clamp_time;
        continue;
      }

      std::vector<double> times(h.t, h.t + h.count);
      std::vector<double> vals(h.count);
      for (int i = 0; i < h.count; ++i) vals[static_cast<std::size_t>(i)] = h.relevant(i);

      // first bracketing pair = first arrival
      int bracket = -1;
      for (int i = 0; i + 1 < h.count; ++i)
        if (vals[static_cast<std::size_t>(i)] * vals[static_cast<std::size_t>(i + 1)] <= 0.0) {
          bracket = i;
          break;
        }
      if (bracket < 0) { // bracket shifted out of the window; clamp
        out.phi(n, e) = sign * clamp_time;
        continue;
      }

      NewtonPoly poly = eno_interpolant(times, vals, bracket);
      double root = find_root(poly, times[static_cast<std::size_t>(bracket)],
                              times[static_cast<std::size_t>(bracket + 1)]);
      root = std::max(root, 0.0);
      out.phi(n, e) = sign * root;
      out.resolved[idx] = 1;
    }
  });
  return out;
}

} // namespace redist

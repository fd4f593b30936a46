#include "redist/time_integrator.hpp"

#include "redist/parallel.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>

namespace redist {

const double Lserk4::a[5] = {0.0, -567301805773.0 / 1357537059087.0,
                             -2404267990393.0 / 2016746695238.0,
                             -3550918686646.0 / 2091501179385.0,
                             -1275806237668.0 / 842570457699.0};
const double Lserk4::b[5] = {1432997174477.0 / 9575080441755.0,
                             5161836677717.0 / 13612068292357.0,
                             1720146321549.0 / 2090206949498.0,
                             3134564353537.0 / 4481467310338.0,
                             2277821191437.0 / 14882151754819.0};
const double Lserk4::c[5] = {0.0, 1432997174477.0 / 9575080441755.0,
                             2526269341429.0 / 6820363962896.0,
                             2006345519317.0 / 3224310063776.0,
                             2802321613138.0 / 2924317926251.0};

double compute_dt(const Mesh& mesh, int order, double cfl) {
  require(cfl > 0.0, "compute_dt: cfl must be positive");
  double rmin = std::numeric_limits<double>::infinity();
  for (int e = 0; e < mesh.num_elements(); ++e) rmin = std::min(rmin, mesh.inradius(e));
  require(rmin > 0.0, "compute_dt: degenerate element (zero inradius)");
  const double nn = static_cast<double>(order + 1);
  return cfl * rmin / (nn * nn);
}

void NodeHistory::push_back(double time, double uu, double vv) {
  if (frozen) return;
  int slot;
  if (count < kCap) {
    slot = count++;
  } else {
    for (int i = 0; i + 1 < kCap; ++i) {
      t[i] = t[i + 1];
      u[i] = u[i + 1];
      v[i] = v[i + 1];
    }
    slot = kCap - 1;
  }
  t[slot] = time;
  u[slot] = uu;
  v[slot] = vv;

  if (tracks_u == 0) return;
  const auto rel = [&](int i) { return tracks_u > 0 ? u[i] : v[i]; };
  if (!crossed && slot > 0) {
    if (rel(slot - 1) * rel(slot) <= 0.0) {
      crossed = true;
      bracket_lo = t[slot - 1];
      bracket_hi = t[slot];
    }
  }
  if (crossed) {
    int after = 0;
    for (int i = 0; i < count; ++i)
      if (t[i] > bracket_hi) ++after;
    if (after >= 2) frozen = true;
  }
}

void NodeHistory::push_front(double time, double uu, double vv) {
  if (frozen || count >= kCap) return;
  for (int i = count; i > 0; --i) {
    t[i] = t[i - 1];
    u[i] = u[i - 1];
    v[i] = v[i - 1];
  }
  t[0] = time;
  u[0] = uu;
  v[0] = vv;
  ++count;
}

namespace {

void check_switch_conservation(const Discretization& d, const Vector& nodal, const Vector& means) {
  const double nodal_mean = (d.re.mass * nodal).sum();
  const double sub_mean = d.sg.areas.dot(means);
  const double scale = std::max({1.0, std::abs(nodal_mean), std::abs(sub_mean)});
  if (std::abs(nodal_mean - sub_mean) > 1e-11 * scale)
    throw std::logic_error("representation switch lost the element mean");
}

} // namespace

AdvanceResult advance(const Discretization& d, const Matrix& phi0, const AdvanceConfig& cfg,
                      const StepObserver& observer) {
  const int k = d.num_elements();
  const int np = d.re.np;
  const int ns = d.sg.ns;

  AdvanceResult out;
  DualFlowState& st = out.state;
  st.u.nodal = phi0;
  st.v.nodal = -phi0;
  st.u.means = Matrix::Zero(ns, k);
  st.v.means = Matrix::Zero(ns, k);
  st.troubled.assign(static_cast<std::size_t>(k), 0);
  st.frozen.assign(static_cast<std::size_t>(k), 0);

  if (cfg.freeze_band && std::isfinite(cfg.band_eps)) {
    for (int e = 0; e < k; ++e) {
      const double margin = cfg.band_eps + 2.0 * d.mesh.diameter(e);
      if (phi0.col(e).cwiseAbs().minCoeff() > margin) st.frozen[static_cast<std::size_t>(e)] = 1;
    }
  }

  HistoryBuffer& hist = out.history;
  hist.nodes.resize(static_cast<std::size_t>(k) * static_cast<std::size_t>(np));
  hist.final_time = cfg.final_time;
  for (int e = 0; e < k; ++e)
    for (int n = 0; n < np; ++n) {
      NodeHistory& h = hist.nodes[static_cast<std::size_t>(e * np + n)];
      const double p0 = phi0(n, e);
      h.tracks_u = p0 > 0.0 ? 1 : (p0 < 0.0 ? -1 : 0);
      h.push_back(0.0, p0, -p0);
    }

  if (cfg.final_time <= 0.0) return out;

  out.dt = compute_dt(d.mesh, d.re.order, cfg.cfl);
  const int nsteps =
      std::max(1, static_cast<int>(std::ceil(cfg.final_time / out.dt - 1e-12)));

  SpatialOptions sopt;
  sopt.fv_order = cfg.fv_order;
  RhsWorkspace ws;
  Matrix du_nodal, du_means, dv_nodal, dv_means;
  Matrix res_u_nodal = Matrix::Zero(np, k), res_u_means = Matrix::Zero(ns, k);
  Matrix res_v_nodal = Matrix::Zero(np, k), res_v_means = Matrix::Zero(ns, k);
  std::vector<uint8_t> prev_mask(static_cast<std::size_t>(k), 0);

  Matrix det_u, det_v; // detection views (nodal shadows of troubled elements)
  Matrix hview_u, hview_v;

  for (int step = 1; step <= nsteps; ++step) {
    const double dt = std::min(out.dt, cfg.final_time - st.t);

    // a-priori detection on both flows, once per step
    if (cfg.limiter != LimiterMode::Off) {
      det_u = st.u.nodal;
      det_v = st.v.nodal;
      for (int e = 0; e < k; ++e)
        if (prev_mask[static_cast<std::size_t>(e)]) {
          det_u.col(e) = d.sg.r * st.u.means.col(e);
          det_v.col(e) = d.sg.r * st.v.means.col(e);
        }
      RegularityReport ru = detect(det_u, d.re, cfg.limiter, cfg.detector_threshold);
      RegularityReport rv = detect(det_v, d.re, cfg.limiter, cfg.detector_threshold);
      for (int e = 0; e < k; ++e) {
        const auto es = static_cast<std::size_t>(e);
        st.troubled[es] = (ru.troubled[es] || rv.troubled[es]) && !st.frozen[es] ? 1 : 0;
      }
    }

    // representation switching at the step boundary, mean-conserving
    for (int e = 0; e < k; ++e) {
      const auto es = static_cast<std::size_t>(e);
      if (st.troubled[es] && !prev_mask[es]) {
        st.u.means.col(e) = d.sg.p * st.u.nodal.col(e);
        st.v.means.col(e) = d.sg.p * st.v.nodal.col(e);
        check_switch_conservation(d, st.u.nodal.col(e), st.u.means.col(e));
      } else if (!st.troubled[es] && prev_mask[es]) {
        st.u.nodal.col(e) = d.sg.r * st.u.means.col(e);
        st.v.nodal.col(e) = d.sg.r * st.v.means.col(e);
        check_switch_conservation(d, st.u.nodal.col(e), st.u.means.col(e));
      }
    }
    prev_mask = st.troubled;
    st.troubled_count = 0;
    for (auto m : st.troubled) st.troubled_count += m;
    out.max_troubled_count = std::max(out.max_troubled_count, st.troubled_count);

    for (int s = 0; s < 5; ++s) {
      compute_rhs(d, st.u, st.troubled, st.frozen, sopt, du_nodal, du_means, ws);
      compute_rhs(d, st.v, st.troubled, st.frozen, sopt, dv_nodal, dv_means, ws);
      const double ars = Lserk4::a[s], brs = Lserk4::b[s];
      parallel_for_each(static_cast<std::size_t>(k), [&](std::size_t es) {
        const int e = static_cast<int>(es);
        if (st.frozen[es]) return;
        if (st.troubled[es]) {
          res_u_means.col(e) = ars * res_u_means.col(e) + dt * du_means.col(e);
          st.u.means.col(e) += brs * res_u_means.col(e);
          res_v_means.col(e) = ars * res_v_means.col(e) + dt * dv_means.col(e);
          st.v.means.col(e) += brs * res_v_means.col(e);
        } else {
          res_u_nodal.col(e) = ars * res_u_nodal.col(e) + dt * du_nodal.col(e);
          st.u.nodal.col(e) += brs * res_u_nodal.col(e);
          res_v_nodal.col(e) = ars * res_v_nodal.col(e) + dt * dv_nodal.col(e);
          st.v.nodal.col(e) += brs * res_v_nodal.col(e);
        }
      });

      for (int e = 0; e < k; ++e) {
        const auto es = static_cast<std::size_t>(e);
        if (st.frozen[es]) continue;
        const bool ok = st.troubled[es]
                            ? st.u.means.col(e).allFinite() && st.v.means.col(e).allFinite()
                            : st.u.nodal.col(e).allFinite() && st.v.nodal.col(e).allFinite();
        if (!ok)
          throw SolverFailure("non-finite state in element " + std::to_string(e) + " at step " +
                                  std::to_string(step) + " stage " + std::to_string(s),
                              e, s);
      }
    }

    st.t += dt;
    st.step = step;

    // nodal views for history (troubled elements through their reconstruction)
    hview_u = st.u.nodal;
    hview_v = st.v.nodal;
    for (int e = 0; e < k; ++e)
      if (st.troubled[static_cast<std::size_t>(e)]) {
        hview_u.col(e) = d.sg.r * st.u.means.col(e);
        hview_v.col(e) = d.sg.r * st.v.means.col(e);
      }

    const double t_now = st.t;
    const bool seed = step <= 2; // mirrored synthetic pre-history
    parallel_for_each(static_cast<std::size_t>(k), [&](std::size_t es) {
      const int e = static_cast<int>(es);
      if (st.frozen[es]) return;
      for (int n = 0; n < np; ++n) {
        NodeHistory& h = hist.nodes[static_cast<std::size_t>(e * np + n)];
        if (seed) h.push_front(-t_now, -hview_v(n, e), -hview_u(n, e));
        h.push_back(t_now, hview_u(n, e), hview_v(n, e));
      }
    });

    if (cfg.verbose)
      std::fprintf(stderr, "step %d t=%.6f dt=%.4e troubled=%d\n", step, st.t, dt,
                   st.troubled_count);
    if (observer && cfg.observer_stride > 0 &&
        (step % cfg.observer_stride == 0 || step == nsteps))
      observer(st, hist);
  }

  out.steps = nsteps;
  out.final_troubled_fraction = static_cast<double>(st.troubled_count) / k;
  return out;
}

} // namespace redist

#include "redist/fv_subcell.hpp"

#include "redist/parallel.hpp"

#include <cmath>
#include <iostream>

namespace redist {

namespace {

constexpr double kWenoEps = 1e-6;
constexpr int kWenoPower = 4;

Vector face_trace(const Discretization& d, const Matrix& nodal, int e, int f) {
  const auto& ids = d.re.face_nodes[static_cast<std::size_t>(f)];
  Vector tr(d.re.nfp);
  for (int i = 0; i < d.re.nfp; ++i) tr(i) = nodal(ids[static_cast<std::size_t>(i)], e);
  return tr;
}

int local_subface_slot(const SubcellGrid& sg, int cell, int subface) {
  for (int k = 0; k < 3; ++k)
    if (sg.cell_faces[static_cast<std::size_t>(cell)][static_cast<std::size_t>(k)][0] == subface)
      return k;
  return -1;
}

} // namespace

bool plane_fit(double dx1, double dy1, double df1, double dx2, double dy2, double df2,
               double& ax, double& ay) {
  const double det = dx1 * dy2 - dx2 * dy1;
  const double scale = std::max({std::abs(dx1), std::abs(dy1), std::abs(dx2), std::abs(dy2)});
  if (std::abs(det) <= 1e-12 * scale * scale) return false;
  ax = (df1 * dy2 - df2 * dy1) / det;
  ay = (dx1 * df2 - dx2 * df1) / det;
  return true;
}

void upwind_fluxes(const Vector& a, const Vector& b, double nx, double ny, Vector& px,
                   Vector& py, Vector& qx, Vector& qy) {
  const auto n = a.size();
  px.resize(n);
  py.resize(n);
  qx.resize(n);
  qy.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    px(i) = nx >= 0.0 ? a(i) : b(i);
    qx(i) = nx >= 0.0 ? b(i) : a(i);
    py(i) = ny >= 0.0 ? a(i) : b(i);
    qy(i) = ny >= 0.0 ? b(i) : a(i);
  }
}

void weno_gradients(const Discretization& d, const FieldData& f,
                    const std::vector<uint8_t>& troubled, const SpatialOptions& opt,
                    WenoResult& out) {
  const int k = d.num_elements();
  const int ns = d.sg.ns;
  const int nseg = d.sg.nseg;
  if (out.gx.rows() != ns || out.gx.cols() != k) {
    out.gx.resize(ns, k);
    out.gy.resize(ns, k);
    out.weights.resize(3 * ns, k);
  }

  if (opt.fv_order == 1) {
    out.gx.setZero();
    out.gy.setZero();
    out.weights.setConstant(1.0 / 3.0);
    return;
  }

  parallel_for_each(static_cast<std::size_t>(k), [&](std::size_t es) {
    const int e = static_cast<int>(es);
    if (!troubled[es]) return;
    const SubcellGeometry& g = d.subgeom[es];

    // Face sub-edge means of the element's own reconstructed trace; only
    // needed on domain-boundary faces, built lazily once per face.
    std::array<Vector, 3> own_face_means;
    Vector rec; // R * means, reconstructed nodal shadow
    auto boundary_segs = [&](int fc) -> const Vector& {
      if (own_face_means[static_cast<std::size_t>(fc)].size() == 0) {
        if (rec.size() == 0) rec = d.sg.r * f.means.col(e);
        Vector tr(d.re.nfp);
        const auto& ids = d.re.face_nodes[static_cast<std::size_t>(fc)];
        for (int i = 0; i < d.re.nfp; ++i) tr(i) = rec(ids[static_cast<std::size_t>(i)]);
        own_face_means[static_cast<std::size_t>(fc)] = d.sg.pf * tr;
      }
      return own_face_means[static_cast<std::size_t>(fc)];
    };

    // Face sub-edge means of a DG neighbor's trace, cached per macro face.
    std::array<Vector, 3> nb_face_means;
    auto neighbor_segs = [&](int fc, int nb, int fb) -> const Vector& {
      if (nb_face_means[static_cast<std::size_t>(fc)].size() == 0)
        nb_face_means[static_cast<std::size_t>(fc)] = d.sg.pf * face_trace(d, f.nodal, nb, fb);
      return nb_face_means[static_cast<std::size_t>(fc)];
    };

    for (int c = 0; c < ns; ++c) {
      // slot k: (dx, dy, dphi) of the stencil point across local face k
      double sdx[3], sdy[3], sdf[3];
      for (int kc = 0; kc < 3; ++kc) {
        const auto [sfid, side] =
            std::pair{d.sg.cell_faces[static_cast<std::size_t>(c)][static_cast<std::size_t>(kc)][0],
                      d.sg.cell_faces[static_cast<std::size_t>(c)][static_cast<std::size_t>(kc)][1]};
        const SubFace& sf = d.sg.sub_faces[static_cast<std::size_t>(sfid)];
        if (sf.cell_b >= 0) {
          const int other = side == 0 ? sf.cell_b : sf.cell_a;
          sdx[kc] = g.centroids(other, 0) - g.centroids(c, 0);
          sdy[kc] = g.centroids(other, 1) - g.centroids(c, 1);
          sdf[kc] = f.means(other, e) - f.means(c, e);
          continue;
        }
        const int fc = sf.macro_face;
        const int seg = sf.segment;
        const int nb = d.mesh.etoe(e, fc);
        const int fb = d.mesh.etof(e, fc);
        if (nb == e) { // domain boundary: zero-jump ghost from the own trace
          sdx[kc] = g.face_mid(sfid, 0) - g.centroids(c, 0);
          sdy[kc] = g.face_mid(sfid, 1) - g.centroids(c, 1);
          sdf[kc] = boundary_segs(fc)(seg) - f.means(c, e);
        } else if (troubled[static_cast<std::size_t>(nb)]) {
          const int cnb = d.sg.face_segment_cell[static_cast<std::size_t>(fb)]
                                                [static_cast<std::size_t>(nseg - 1 - seg)];
          sdx[kc] = d.subgeom[static_cast<std::size_t>(nb)].centroids(cnb, 0) - g.centroids(c, 0);
          sdy[kc] = d.subgeom[static_cast<std::size_t>(nb)].centroids(cnb, 1) - g.centroids(c, 1);
          sdf[kc] = f.means(cnb, nb) - f.means(c, e);
        } else {
          const Vector& segs = neighbor_segs(fc, nb, fb);
          sdx[kc] = g.face_mid(sfid, 0) - g.centroids(c, 0);
          sdy[kc] = g.face_mid(sfid, 1) - g.centroids(c, 1);
          sdf[kc] = segs(nseg - 1 - seg) - f.means(c, e);
        }
      }

      // Three compact stencils from the slot pairs, combined by smoothness.
      double ax[3], ay[3];
      bool ok[3];
      static constexpr int pair_a[3] = {0, 1, 2};
      static constexpr int pair_b[3] = {1, 2, 0};
      for (int j = 0; j < 3; ++j)
        ok[j] = plane_fit(sdx[pair_a[j]], sdy[pair_a[j]], sdf[pair_a[j]], sdx[pair_b[j]],
                          sdy[pair_b[j]], sdf[pair_b[j]], ax[j], ay[j]);

      double wsum = 0.0;
      double w[3] = {0, 0, 0};
      for (int j = 0; j < 3; ++j) {
        if (!ok[j]) continue;
        const double gamma = std::hypot(ax[j], ay[j]) / g.areas(c);
        w[j] = std::pow(kWenoEps + gamma, -kWenoPower);
        wsum += w[j];
      }
      double gx = 0.0, gy = 0.0;
      if (wsum > 0.0) {
        for (int j = 0; j < 3; ++j) {
          w[j] /= wsum;
          gx += w[j] * (ok[j] ? ax[j] : 0.0);
          gy += w[j] * (ok[j] ? ay[j] : 0.0);
        }
      } else {
        std::cerr << "weno: all stencils singular on element " << e << " subcell " << c << "\n";
      }
      out.gx(c, e) = gx;
      out.gy(c, e) = gy;
      for (int j = 0; j < 3; ++j) out.weights(3 * c + j, e) = w[j];
    }
  });
}

void compute_rhs(const Discretization& d, const FieldData& f,
                 const std::vector<uint8_t>& troubled, const std::vector<uint8_t>& frozen,
                 const SpatialOptions& opt, Matrix& dnodal, Matrix& dmeans, RhsWorkspace& ws) {
  const int k = d.num_elements();
  const int np = d.re.np;
  const int ns = d.sg.ns;
  const int nseg = d.sg.nseg;
  const int nfaces = static_cast<int>(d.faces.size());

  if (dnodal.rows() != np || dnodal.cols() != k) dnodal.resize(np, k);
  if (dmeans.rows() != ns || dmeans.cols() != k) dmeans.resize(ns, k);
  if (ws.fpx.rows() != nseg || ws.fpx.cols() != nfaces) {
    ws.fpx.resize(nseg, nfaces);
    ws.fpy.resize(nseg, nfaces);
    ws.fqx.resize(nseg, nfaces);
    ws.fqy.resize(nseg, nfaces);
  }
  ws.face_fv.assign(static_cast<std::size_t>(nfaces), 0);
  if (ws.trace.rows() != 3 * ns || ws.trace.cols() != k) ws.trace.resize(3 * ns, k);

  bool any_troubled = false;
  for (int e = 0; e < k; ++e) any_troubled |= troubled[static_cast<std::size_t>(e)] != 0;

  // Subcell gradients and extrapolated sub-face traces on troubled elements.
  if (any_troubled) {
    weno_gradients(d, f, troubled, opt, ws.weno);
    parallel_for_each(static_cast<std::size_t>(k), [&](std::size_t es) {
      const int e = static_cast<int>(es);
      if (!troubled[es]) return;
      const SubcellGeometry& g = d.subgeom[es];
      for (int c = 0; c < ns; ++c) {
        for (int kc = 0; kc < 3; ++kc) {
          const int sfid =
              d.sg.cell_faces[static_cast<std::size_t>(c)][static_cast<std::size_t>(kc)][0];
          double val = f.means(c, e);
          if (opt.fv_order >= 2)
            val += ws.weno.gx(c, e) * (g.face_mid(sfid, 0) - g.centroids(c, 0)) +
                   ws.weno.gy(c, e) * (g.face_mid(sfid, 1) - g.centroids(c, 1));
          ws.trace(3 * c + kc, e) = val;
        }
      }
    });
  }

  // Face pass: single upwind evaluation per interior face, stored in the
  // owner's orientation. Mixed DG/FV faces work at sub-edge resolution.
  parallel_for_each(static_cast<std::size_t>(nfaces), [&](std::size_t fs) {
    const MacroFace& mf = d.faces[fs];
    if (mf.boundary) return;
    if (frozen[static_cast<std::size_t>(mf.ea)] && frozen[static_cast<std::size_t>(mf.eb)]) return;
    const bool ta = troubled[static_cast<std::size_t>(mf.ea)] != 0;
    const bool tb = troubled[static_cast<std::size_t>(mf.eb)] != 0;
    const double nx = d.geom.nx(mf.ea, mf.fa);
    const double ny = d.geom.ny(mf.ea, mf.fa);

    Vector va, vb;
    if (!ta && !tb) {
      va = face_trace(d, f.nodal, mf.ea, mf.fa);
      vb = face_trace(d, f.nodal, mf.eb, mf.fb).reverse();
    } else {
      ws.face_fv[fs] = 1;
      auto side_segs = [&](int e, int fc, bool trb) {
        if (!trb) return Vector(d.sg.pf * face_trace(d, f.nodal, e, fc));
        Vector segs(nseg);
        for (int seg = 0; seg < nseg; ++seg) {
          const int sfid = d.sg.face_segment_subface[static_cast<std::size_t>(fc)]
                                                    [static_cast<std::size_t>(seg)];
          const int cell = d.sg.sub_faces[static_cast<std::size_t>(sfid)].cell_a;
          const int slot = local_subface_slot(d.sg, cell, sfid);
          segs(seg) = ws.trace(3 * cell + slot, e);
        }
        return segs;
      };
      va = side_segs(mf.ea, mf.fa, ta);
      vb = side_segs(mf.eb, mf.fb, tb).reverse();
    }

    Vector px, py, qx, qy;
    upwind_fluxes(va, vb, nx, ny, px, py, qx, qy);
    ws.fpx.col(static_cast<Eigen::Index>(fs)) = px;
    ws.fpy.col(static_cast<Eigen::Index>(fs)) = py;
    ws.fqx.col(static_cast<Eigen::Index>(fs)) = qx;
    ws.fqy.col(static_cast<Eigen::Index>(fs)) = qy;
  });

  // Volume derivatives for the DG elements.
  ws.dr_f = d.re.dr * f.nodal;
  ws.ds_f = d.re.ds * f.nodal;

  parallel_for_each(static_cast<std::size_t>(k), [&](std::size_t es) {
    const int e = static_cast<int>(es);
    if (frozen[es]) {
      dnodal.col(e).setZero();
      dmeans.col(e).setZero();
      return;
    }

    if (!troubled[es]) {
      // LDG gradients in strong form: exact volume derivative plus lifted
      // flux corrections where the upwind choice differs from the own trace.
      Vector px = d.geom.rx(e) * ws.dr_f.col(e) + d.geom.sx(e) * ws.ds_f.col(e);
      Vector py = d.geom.ry(e) * ws.dr_f.col(e) + d.geom.sy(e) * ws.ds_f.col(e);
      Vector qx = px, qy = py;

      for (int fc = 0; fc < 3; ++fc) {
        const int fid = d.face_id(e, fc);
        const MacroFace& mf = d.faces[static_cast<std::size_t>(fid)];
        if (mf.boundary) continue; // zero-jump exterior trace
        const int side = d.face_side(e, fc);

        auto consume = [&](const Matrix& arr) {
          Vector v = arr.col(fid);
          if (side == 1) v.reverseInPlace();
          if (ws.face_fv[static_cast<std::size_t>(fid)]) v = d.sg.rf * v;
          return v;
        };
        Vector own = face_trace(d, f.nodal, e, fc);
        Vector cpx = consume(ws.fpx) - own;
        Vector cpy = consume(ws.fpy) - own;
        Vector cqx = consume(ws.fqx) - own;
        Vector cqy = consume(ws.fqy) - own;

        const double scale = d.geom.jf(e, fc) / d.geom.jac(e);
        const double fnx = d.geom.nx(e, fc), fny = d.geom.ny(e, fc);
        const Matrix& lf = d.re.lift[static_cast<std::size_t>(fc)];
        if (!cpx.isZero(0.0)) px += (scale * fnx) * (lf * cpx);
        if (!cpy.isZero(0.0)) py += (scale * fny) * (lf * cpy);
        if (!cqx.isZero(0.0)) qx += (scale * fnx) * (lf * cqx);
        if (!cqy.isZero(0.0)) qy += (scale * fny) * (lf * cqy);
      }
      dnodal.col(e) = -llf_hamiltonian_column(px, py, qx, qy);
      dmeans.col(e).setZero();
      return;
    }

    // Degenerate FV scheme: boundary-integral gradients from single
    // upwind flux values per sub-face.
    const SubcellGeometry& g = d.subgeom[es];
    Vector px = Vector::Zero(ns), py = Vector::Zero(ns);
    Vector qx = Vector::Zero(ns), qy = Vector::Zero(ns);

    const int nsf = static_cast<int>(d.sg.sub_faces.size());
    for (int sfid = 0; sfid < nsf; ++sfid) {
      const SubFace& sf = d.sg.sub_faces[static_cast<std::size_t>(sfid)];
      const double nx = g.face_normal(sfid, 0), ny = g.face_normal(sfid, 1);
      const double len = g.face_len(sfid);

      double vpx, vpy, vqx, vqy;
      if (sf.cell_b >= 0) {
        const int ka = local_subface_slot(d.sg, sf.cell_a, sfid);
        const int kb = local_subface_slot(d.sg, sf.cell_b, sfid);
        const double tra = ws.trace(3 * sf.cell_a + ka, e);
        const double trb = ws.trace(3 * sf.cell_b + kb, e);
        vpx = nx >= 0.0 ? tra : trb;
        vqx = nx >= 0.0 ? trb : tra;
        vpy = ny >= 0.0 ? tra : trb;
        vqy = ny >= 0.0 ? trb : tra;
        px(sf.cell_b) -= vpx * len * nx;
        py(sf.cell_b) -= vpy * len * ny;
        qx(sf.cell_b) -= vqx * len * nx;
        qy(sf.cell_b) -= vqy * len * ny;
      } else {
        const int fid = d.face_id(e, sf.macro_face);
        const MacroFace& mf = d.faces[static_cast<std::size_t>(fid)];
        const int ka = local_subface_slot(d.sg, sf.cell_a, sfid);
        if (mf.boundary) {
          const double tr = ws.trace(3 * sf.cell_a + ka, e);
          vpx = vpy = vqx = vqy = tr;
        } else {
          const int side = d.face_side(e, sf.macro_face);
          const int idx = side == 0 ? sf.segment : nseg - 1 - sf.segment;
          vpx = ws.fpx(idx, fid);
          vpy = ws.fpy(idx, fid);
          vqx = ws.fqx(idx, fid);
          vqy = ws.fqy(idx, fid);
        }
      }
      px(sf.cell_a) += vpx * len * nx;
      py(sf.cell_a) += vpy * len * ny;
      qx(sf.cell_a) += vqx * len * nx;
      qy(sf.cell_a) += vqy * len * ny;
    }

    px.array() /= g.areas.array();
    py.array() /= g.areas.array();
    qx.array() /= g.areas.array();
    qy.array() /= g.areas.array();

    if (opt.fv_order == 1) {
      // Maximal dissipation bound keeps the first-order scheme monotone.
      Vector h(ns);
      for (int c = 0; c < ns; ++c) {
        const double gx = 0.5 * (px(c) + qx(c)), gy = 0.5 * (py(c) + qy(c));
        h(c) = std::hypot(gx, gy) - 0.5 * (qx(c) - px(c)) - 0.5 * (qy(c) - py(c));
      }
      dmeans.col(e) = -h;
    } else {
      dmeans.col(e) = -llf_hamiltonian_column(px, py, qx, qy);
    }
    dnodal.col(e).setZero();
  });
}

Vector demote_column(const Discretization& d, const Matrix& nodal, int e) {
  return d.sg.p * nodal.col(e);
}

Vector promote_column(const Discretization& d, const Matrix& means, int e) {
  return d.sg.r * means.col(e);
}

} // namespace redist

#include "redist/subcell.hpp"

#include "redist/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace redist {

namespace {

double tri_area(double ar, double as, double br, double bs, double cr, double cs) {
  return 0.5 * ((br - ar) * (cs - as) - (cr - ar) * (bs - as));
}

} // namespace

SubcellGrid build_subcell_grid(const ReferenceElement& re) {
  const int n = re.order;
  const int m = n + 1; // lattice order of the sub-tessellation
  SubcellGrid sg;
  sg.order = n;
  sg.ns = m * m;
  sg.nseg = n + 1;

  NodeSet lattice = warp_blend_nodes(m);
  sg.lattice_r = lattice.r;
  sg.lattice_s = lattice.s;
  sg.cells = lattice_triangulation(m);
  require(static_cast<int>(sg.cells.size()) == sg.ns, "subcell: tessellation count mismatch");

  sg.areas.resize(sg.ns);
  sg.centroids.resize(sg.ns, 2);
  for (int c = 0; c < sg.ns; ++c) {
    const auto& t = sg.cells[static_cast<std::size_t>(c)];
    const double a = tri_area(lattice.r(t[0]), lattice.s(t[0]), lattice.r(t[1]), lattice.s(t[1]),
                              lattice.r(t[2]), lattice.s(t[2]));
    require(a > 0.0, "subcell: inverted sub-triangle");
    sg.areas(c) = a;
    sg.centroids(c, 0) = (lattice.r(t[0]) + lattice.r(t[1]) + lattice.r(t[2])) / 3.0;
    sg.centroids(c, 1) = (lattice.s(t[0]) + lattice.s(t[1]) + lattice.s(t[2])) / 3.0;
  }

  // Sub-face topology. Boundary classification uses the lattice indices, so
  // it is exact regardless of node warping.
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> edge_owners;
  for (int c = 0; c < sg.ns; ++c) {
    const auto& t = sg.cells[static_cast<std::size_t>(c)];
    for (int k = 0; k < 3; ++k)
      edge_owners[std::minmax(t[k], t[(k + 1) % 3])].push_back({c, k});
  }

  sg.cell_faces.assign(static_cast<std::size_t>(sg.ns), {});
  for (auto& v : sg.face_segment_cell) v.assign(static_cast<std::size_t>(sg.nseg), -1);
  for (auto& v : sg.face_segment_subface) v.assign(static_cast<std::size_t>(sg.nseg), -1);

  for (const auto& [edge, owners] : edge_owners) {
    SubFace sf;
    const auto [c0, k0] = owners[0];
    const auto& t0 = sg.cells[static_cast<std::size_t>(c0)];
    const int va = t0[k0], vb = t0[(k0 + 1) % 3];
    sf.cell_a = c0;
    sf.ar = lattice.r(va);
    sf.as = lattice.s(va);
    sf.br = lattice.r(vb);
    sf.bs = lattice.s(vb);

    if (owners.size() == 2) {
      sf.cell_b = owners[1].first;
    } else {
      const int ia = lattice.lattice_i[static_cast<std::size_t>(va)];
      const int ja = lattice.lattice_j[static_cast<std::size_t>(va)];
      const int ib = lattice.lattice_i[static_cast<std::size_t>(vb)];
      const int jb = lattice.lattice_j[static_cast<std::size_t>(vb)];
      if (ja == 0 && jb == 0) {
        sf.macro_face = 0;
        sf.segment = std::min(ia, ib);
      } else if (ia + ja == m && ib + jb == m) {
        sf.macro_face = 1;
        sf.segment = std::min(ja, jb);
      } else if (ia == 0 && ib == 0) {
        sf.macro_face = 2;
        sf.segment = m - 1 - std::min(ja, jb); // face 2 runs s descending
      } else {
        throw ConfigError("subcell: dangling interior sub-edge");
      }
    }

    const int id = static_cast<int>(sg.sub_faces.size());
    sg.sub_faces.push_back(sf);
    sg.cell_faces[static_cast<std::size_t>(c0)][static_cast<std::size_t>(k0)] = {id, 0};
    if (owners.size() == 2) {
      const auto [c1, k1] = owners[1];
      sg.cell_faces[static_cast<std::size_t>(c1)][static_cast<std::size_t>(k1)] = {id, 1};
    } else {
      sg.face_segment_cell[static_cast<std::size_t>(sf.macro_face)]
                          [static_cast<std::size_t>(sf.segment)] = c0;
      sg.face_segment_subface[static_cast<std::size_t>(sf.macro_face)]
                             [static_cast<std::size_t>(sf.segment)] = id;
    }
  }

  for (int f = 0; f < 3; ++f)
    for (int k = 0; k < sg.nseg; ++k)
      require(sg.face_segment_cell[static_cast<std::size_t>(f)][static_cast<std::size_t>(k)] >= 0,
              "subcell: macro face not fully tiled");

  // Mean-value projection, exact for degree-N integrands per subcell.
  QuadRule q = triangle_quadrature(n);
  sg.p.resize(sg.ns, re.np);
  for (int c = 0; c < sg.ns; ++c) {
    const auto& t = sg.cells[static_cast<std::size_t>(c)];
    const double ar = lattice.r(t[0]), as = lattice.s(t[0]);
    const double br = lattice.r(t[1]), bs = lattice.s(t[1]);
    const double cr = lattice.r(t[2]), cs = lattice.s(t[2]);
    Vector rr(q.x.size()), ss(q.x.size());
    for (Eigen::Index k = 0; k < q.x.size(); ++k) {
      const double u = 0.5 * (q.x(k) + 1.0), v = 0.5 * (q.y(k) + 1.0);
      rr(k) = ar + (br - ar) * u + (cr - ar) * v;
      ss(k) = as + (bs - as) * u + (cs - as) * v;
    }
    Matrix interp = interpolation_matrix(re, rr, ss); // nq x Np
    sg.p.row(c) = (q.w.transpose() * interp) / 2.0;   // quad weights sum to 2
  }

  // Reconstruction: area-weighted least squares subject to exact macro-mean
  // preservation, solved once through the KKT system.
  {
    Matrix w = sg.areas.asDiagonal();
    Matrix a2 = 2.0 * sg.p.transpose() * w * sg.p; // Np x Np
    Vector c = re.mass * Vector::Ones(re.np);      // integral of each basis fn
    Matrix kkt = Matrix::Zero(re.np + 1, re.np + 1);
    kkt.topLeftCorner(re.np, re.np) = a2;
    kkt.topRightCorner(re.np, 1) = c;
    kkt.bottomLeftCorner(1, re.np) = c.transpose();

    Matrix rhs(re.np + 1, sg.ns);
    rhs.topRows(re.np) = 2.0 * sg.p.transpose() * w;
    rhs.bottomRows(1) = sg.areas.transpose();

    Eigen::FullPivLU<Matrix> lu(kkt);
    require(lu.isInvertible(), "subcell: singular reconstruction system");
    sg.r = lu.solve(rhs).topRows(re.np);

    const double err = (sg.r * sg.p - Matrix::Identity(re.np, re.np)).cwiseAbs().maxCoeff();
    require(err < 1e-10, "subcell: reconstruction does not invert projection");
  }

  // Face projection over the N+1 sub-edges of the Gauss-Lobatto break grid.
  sg.face_breaks = jacobi_gl(0.0, 0.0, m);
  {
    Matrix v1d = vandermonde_1d(n, re.face_xi);
    Matrix v1d_inv = v1d.inverse();
    Vector gx, gw;
    gauss_legendre(n, gx, gw);
    sg.pf.resize(sg.nseg, sg.nseg);
    for (int seg = 0; seg < sg.nseg; ++seg) {
      const double lo = sg.face_breaks(seg), hi = sg.face_breaks(seg + 1);
      Vector pts = (0.5 * (hi - lo) * gx.array() + 0.5 * (hi + lo)).matrix();
      Matrix lvals = vandermonde_1d(n, pts) * v1d_inv; // nq x Nfp
      sg.pf.row(seg) = (gw.transpose() * lvals) / 2.0; // mean over the sub-edge
    }
    Eigen::FullPivLU<Matrix> lu(sg.pf);
    require(lu.isInvertible(), "subcell: singular face projection");
    sg.rf = lu.inverse();
  }

  return sg;
}

Vector demote_element(const SubcellGrid& sg, const Vector& nodal) {
  return sg.p * nodal;
}

Vector promote_element(const SubcellGrid& sg, const Vector& means) {
  return sg.r * means;
}

} // namespace redist

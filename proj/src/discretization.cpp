#include "redist/discretization.hpp"

#include "redist/parallel.hpp"

#include <cmath>

namespace redist {

Discretization::Discretization(Mesh m, int order) : mesh(std::move(m)) {
  require(order >= 1 && order <= 7, "discretization: order must be in [1, 7]");
  re = build_reference_element(order);
  sg = build_subcell_grid(re);
  geom = compute_geometry(mesh);

  const int k = mesh.num_elements();

  // Unique macro faces, owner = first visitor (lower element index).
  face_id.setConstant(k, 3, -1);
  face_side.setConstant(k, 3, -1);
  for (int e = 0; e < k; ++e) {
    for (int f = 0; f < 3; ++f) {
      if (face_id(e, f) >= 0) continue;
      MacroFace mf;
      mf.ea = e;
      mf.fa = f;
      mf.eb = mesh.etoe(e, f);
      mf.fb = mesh.etof(e, f);
      mf.boundary = (mf.eb == e && mf.fb == f);
      const int id = static_cast<int>(faces.size());
      faces.push_back(mf);
      face_id(e, f) = id;
      face_side(e, f) = 0;
      if (!mf.boundary) {
        face_id(mf.eb, mf.fb) = id;
        face_side(mf.eb, mf.fb) = 1;
      }
    }
  }

  // Physical node coordinates.
  node_x.resize(re.np, k);
  node_y.resize(re.np, k);
  for (int e = 0; e < k; ++e) {
    const auto v0 = mesh.vertices.row(mesh.elements(e, 0));
    const auto v1 = mesh.vertices.row(mesh.elements(e, 1));
    const auto v2 = mesh.vertices.row(mesh.elements(e, 2));
    for (int n = 0; n < re.np; ++n) {
      const double l1 = 0.5 * (re.r(n) + 1.0);
      const double l2 = 0.5 * (re.s(n) + 1.0);
      const double l0 = 1.0 - l1 - l2;
      node_x(n, e) = l0 * v0(0) + l1 * v1(0) + l2 * v2(0);
      node_y(n, e) = l0 * v0(1) + l1 * v1(1) + l2 * v2(1);
    }
  }

  // Face-node correspondence sanity: matched coordinates across every
  // interior face (owner order k <-> neighbor order Nfp-1-k).
  for (const auto& mf : faces) {
    if (mf.boundary) continue;
    for (int i = 0; i < re.nfp; ++i) {
      const int na = re.face_nodes[static_cast<std::size_t>(mf.fa)][static_cast<std::size_t>(i)];
      const int nb = re.face_nodes[static_cast<std::size_t>(mf.fb)]
                                  [static_cast<std::size_t>(re.nfp - 1 - i)];
      const double dx = node_x(na, mf.ea) - node_x(nb, mf.eb);
      const double dy = node_y(na, mf.ea) - node_y(nb, mf.eb);
      require(std::hypot(dx, dy) < 1e-10, "discretization: non-conforming face node match");
    }
  }

  // Physical subcell geometry (affine image of the reference tessellation).
  subgeom.resize(static_cast<std::size_t>(k));
  const int nsf = static_cast<int>(sg.sub_faces.size());
  parallel_for_each(static_cast<std::size_t>(k), [&](std::size_t es) {
    const int e = static_cast<int>(es);
    const auto v0 = mesh.vertices.row(mesh.elements(e, 0));
    const auto v1 = mesh.vertices.row(mesh.elements(e, 1));
    const auto v2 = mesh.vertices.row(mesh.elements(e, 2));
    const double xr = 0.5 * (v1(0) - v0(0)), yr = 0.5 * (v1(1) - v0(1));
    const double xs = 0.5 * (v2(0) - v0(0)), ys = 0.5 * (v2(1) - v0(1));
    auto map_x = [&](double r, double s) { return v0(0) + xr * (r + 1.0) + xs * (s + 1.0); };
    auto map_y = [&](double r, double s) { return v0(1) + yr * (r + 1.0) + ys * (s + 1.0); };

    SubcellGeometry& g = subgeom[es];
    g.areas = sg.areas * geom.jac(e);
    g.centroids.resize(sg.ns, 2);
    for (int c = 0; c < sg.ns; ++c) {
      g.centroids(c, 0) = map_x(sg.centroids(c, 0), sg.centroids(c, 1));
      g.centroids(c, 1) = map_y(sg.centroids(c, 0), sg.centroids(c, 1));
    }
    g.face_len.resize(nsf);
    g.face_normal.resize(nsf, 2);
    g.face_mid.resize(nsf, 2);
    for (int sf = 0; sf < nsf; ++sf) {
      const auto& s = sg.sub_faces[static_cast<std::size_t>(sf)];
      const double ax = map_x(s.ar, s.as), ay = map_y(s.ar, s.as);
      const double bx = map_x(s.br, s.bs), by = map_y(s.br, s.bs);
      const double ex = bx - ax, ey = by - ay;
      const double len = std::hypot(ex, ey);
      g.face_len(sf) = len;
      g.face_normal(sf, 0) = ey / len;
      g.face_normal(sf, 1) = -ex / len;
      g.face_mid(sf, 0) = 0.5 * (ax + bx);
      g.face_mid(sf, 1) = 0.5 * (ay + by);
    }
  });
}

Matrix Discretization::sample(const std::function<double(double, double)>& f) const {
  Matrix out(re.np, mesh.num_elements());
  for (int e = 0; e < mesh.num_elements(); ++e)
    for (int n = 0; n < re.np; ++n) out(n, e) = f(node_x(n, e), node_y(n, e));
  return out;
}

} // namespace redist

#include "redist/ref_element.hpp"

#include "redist/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace redist {

namespace {

// Optimal blend parameters for orders 1..15.
constexpr double kAlphaOpt[15] = {0.0000, 0.0000, 1.4152, 0.1001, 0.2751,
                                  0.9800, 1.0999, 1.2832, 1.3648, 1.4773,
                                  1.4959, 1.5743, 1.5770, 1.6223, 1.6258};

Vector warp_factor(int n, const Vector& rout) {
  Vector req = Vector::LinSpaced(n + 1, -1.0, 1.0);
  Vector lgl = jacobi_gl(0.0, 0.0, n);
  Matrix veq = vandermonde_1d(n, req);

  const auto nr = rout.size();
  Matrix pmat(n + 1, nr);
  for (int i = 0; i <= n; ++i) pmat.row(i) = jacobi_p(rout, 0.0, 0.0, i).transpose();
  Matrix lmat = veq.transpose().fullPivLu().solve(pmat); // Lagrange basis of req at rout

  Vector warp = lmat.transpose() * (lgl - req);
  for (Eigen::Index i = 0; i < nr; ++i) {
    if (std::abs(rout(i)) < 1.0 - 1e-10) {
      const double sf = 1.0 - rout(i) * rout(i);
      warp(i) /= sf;
    } else {
      warp(i) = 0.0;
    }
  }
  return warp;
}

void equilateral_to_rs(const Vector& x, const Vector& y, Vector& r, Vector& s) {
  const double sq3 = std::sqrt(3.0);
  Vector l1 = (sq3 * y.array() + 1.0) / 3.0;
  Vector l2 = (-3.0 * x.array() - sq3 * y.array() + 2.0) / 6.0;
  Vector l3 = (3.0 * x.array() - sq3 * y.array() + 2.0) / 6.0;
  r = -l2 + l3 - l1;
  s = -l2 - l3 + l1;
}

void rs_to_ab(const Vector& r, const Vector& s, Vector& a, Vector& b) {
  const auto n = r.size();
  a.resize(n);
  b = s;
  for (Eigen::Index i = 0; i < n; ++i)
    a(i) = (s(i) != 1.0) ? 2.0 * (1.0 + r(i)) / (1.0 - s(i)) - 1.0 : -1.0;
}

Vector simplex_2d(const Vector& a, const Vector& b, int id, int jd) {
  Vector h1 = jacobi_p(a, 0.0, 0.0, id);
  Vector h2 = jacobi_p(b, 2.0 * id + 1.0, 0.0, jd);
  return (std::numbers::sqrt2 * h1.array() * h2.array() *
          (1.0 - b.array()).pow(static_cast<double>(id)))
      .matrix();
}

void grad_simplex_2d(const Vector& a, const Vector& b, int id, int jd, Vector& dr, Vector& ds) {
  Vector fa = jacobi_p(a, 0.0, 0.0, id);
  Vector dfa = grad_jacobi_p(a, 0.0, 0.0, id);
  Vector gb = jacobi_p(b, 2.0 * id + 1.0, 0.0, jd);
  Vector dgb = grad_jacobi_p(b, 2.0 * id + 1.0, 0.0, jd);

  Eigen::ArrayXd half1mb = 0.5 * (1.0 - b.array());
  dr = (dfa.array() * gb.array()).matrix();
  if (id > 0) dr.array() *= half1mb.pow(id - 1);

  ds = (dfa.array() * gb.array() * (0.5 * (1.0 + a.array()))).matrix();
  if (id > 0) ds.array() *= half1mb.pow(id - 1);
  Eigen::ArrayXd tmp = dgb.array() * half1mb.pow(id);
  if (id > 0) tmp -= 0.5 * id * gb.array() * half1mb.pow(id - 1);
  ds.array() += fa.array() * tmp;

  const double scale = std::pow(2.0, id + 0.5);
  dr *= scale;
  ds *= scale;
}

} // namespace

NodeSet warp_blend_nodes(int order) {
  require(order >= 1 && order <= 15, "warp_blend_nodes: order must be in [1, 15]");
  const int n = order;
  const int np = (n + 1) * (n + 2) / 2;
  const double alpha = kAlphaOpt[n - 1];

  NodeSet ns;
  Vector l1(np), l2(np), l3(np);
  ns.lattice_i.resize(static_cast<std::size_t>(np));
  ns.lattice_j.resize(static_cast<std::size_t>(np));
  int sk = 0;
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n - j; ++i, ++sk) {
      // i advances along r, j along s
      l1(sk) = static_cast<double>(j) / n;       // barycentric of vertex (-1, 1)
      l3(sk) = static_cast<double>(i) / n;       // barycentric of vertex (1, -1)
      l2(sk) = 1.0 - l1(sk) - l3(sk);            // barycentric of vertex (-1, -1)
      ns.lattice_i[static_cast<std::size_t>(sk)] = i;
      ns.lattice_j[static_cast<std::size_t>(sk)] = j;
    }
  }

  Vector x = -l2 + l3;
  Vector y = (-l2 - l3 + 2.0 * l1) / std::sqrt(3.0);

  Vector blend1 = (4.0 * l2.array() * l3.array()).matrix();
  Vector blend2 = (4.0 * l1.array() * l3.array()).matrix();
  Vector blend3 = (4.0 * l1.array() * l2.array()).matrix();

  Vector wf1 = warp_factor(n, l3 - l2);
  Vector wf2 = warp_factor(n, l1 - l3);
  Vector wf3 = warp_factor(n, l2 - l1);

  Vector warp1 = (blend1.array() * wf1.array() * (1.0 + (alpha * l1.array()).square())).matrix();
  Vector warp2 = (blend2.array() * wf2.array() * (1.0 + (alpha * l2.array()).square())).matrix();
  Vector warp3 = (blend3.array() * wf3.array() * (1.0 + (alpha * l3.array()).square())).matrix();

  const double c23 = std::cos(2.0 * std::numbers::pi / 3.0);
  const double s23 = std::sin(2.0 * std::numbers::pi / 3.0);
  const double c43 = std::cos(4.0 * std::numbers::pi / 3.0);
  const double s43 = std::sin(4.0 * std::numbers::pi / 3.0);
  x += warp1 + c23 * warp2 + c43 * warp3;
  y += s23 * warp2 + s43 * warp3;

  equilateral_to_rs(x, y, ns.r, ns.s);
  return ns;
}

std::vector<std::array<int, 3>> lattice_triangulation(int order) {
  std::vector<std::array<int, 3>> tris;
  tris.reserve(static_cast<std::size_t>(order * order));
  for (int j = 0; j < order; ++j) {
    for (int i = 0; i < order - j; ++i) {
      tris.push_back({lattice_node_index(order, i, j), lattice_node_index(order, i + 1, j),
                      lattice_node_index(order, i, j + 1)});
      if (i + j < order - 1)
        tris.push_back({lattice_node_index(order, i + 1, j), lattice_node_index(order, i + 1, j + 1),
                        lattice_node_index(order, i, j + 1)});
    }
  }
  return tris;
}

int lattice_node_index(int order, int i, int j) {
  // row j starts after rows 0..j-1 of lengths (order+1-k)
  int base = 0;
  for (int k = 0; k < j; ++k) base += order + 1 - k;
  return base + i;
}

Matrix vandermonde_2d(int order, const Vector& r, const Vector& s) {
  Vector a, b;
  rs_to_ab(r, s, a, b);
  const int np = (order + 1) * (order + 2) / 2;
  Matrix v(r.size(), np);
  int sk = 0;
  for (int i = 0; i <= order; ++i)
    for (int j = 0; j <= order - i; ++j, ++sk) v.col(sk) = simplex_2d(a, b, i, j);
  return v;
}

void grad_vandermonde_2d(int order, const Vector& r, const Vector& s, Matrix& vr, Matrix& vs) {
  Vector a, b;
  rs_to_ab(r, s, a, b);
  const int np = (order + 1) * (order + 2) / 2;
  vr.resize(r.size(), np);
  vs.resize(r.size(), np);
  Vector dr, ds;
  int sk = 0;
  for (int i = 0; i <= order; ++i)
    for (int j = 0; j <= order - i; ++j, ++sk) {
      grad_simplex_2d(a, b, i, j, dr, ds);
      vr.col(sk) = dr;
      vs.col(sk) = ds;
    }
}

ReferenceElement build_reference_element(int order) {
  require(order >= 1 && order <= 15, "build_reference_element: order must be in [1, 15]");
  ReferenceElement re;
  re.order = order;
  re.np = (order + 1) * (order + 2) / 2;
  re.nfp = order + 1;

  NodeSet ns = warp_blend_nodes(order);
  re.r = ns.r;
  re.s = ns.s;
  re.lattice_i = ns.lattice_i;
  re.lattice_j = ns.lattice_j;

  re.v = vandermonde_2d(order, re.r, re.s);
  Eigen::FullPivLU<Matrix> lu(re.v);
  require(lu.isInvertible(), "build_reference_element: singular Vandermonde matrix");
  re.vinv = lu.inverse();
  re.mass = re.vinv.transpose() * re.vinv;

  Matrix vr, vs;
  grad_vandermonde_2d(order, re.r, re.s, vr, vs);
  re.dr = vr * re.vinv;
  re.ds = vs * re.vinv;

  re.mode_degree_i.clear();
  re.mode_degree_j.clear();
  for (int i = 0; i <= order; ++i)
    for (int j = 0; j <= order - i; ++j) {
      re.mode_degree_i.push_back(i);
      re.mode_degree_j.push_back(j);
    }

  // Face nodes ordered along the CCW traversal v_f -> v_{f+1}. With the
  // lattice bookkeeping this is exact (no coordinate tolerance games):
  // face 0: j == 0 by i ascending; face 1: i+j == order by j ascending;
  // face 2: i == 0 by j descending.
  for (int f = 0; f < 3; ++f) re.face_nodes[f].clear();
  for (int i = 0; i <= order; ++i)
    re.face_nodes[0].push_back(lattice_node_index(order, i, 0));
  for (int j = 0; j <= order; ++j)
    re.face_nodes[1].push_back(lattice_node_index(order, order - j, j));
  for (int j = order; j >= 0; --j)
    re.face_nodes[2].push_back(lattice_node_index(order, 0, j));

  re.face_xi = jacobi_gl(0.0, 0.0, order);

  // Lift: 1D face mass embedded at the face nodes, premultiplied by M^{-1}.
  Matrix v1d = vandermonde_1d(order, re.face_xi);
  Matrix mass_1d = (v1d * v1d.transpose()).inverse();
  for (int f = 0; f < 3; ++f) {
    Matrix emat = Matrix::Zero(re.np, re.nfp);
    for (int i = 0; i < re.nfp; ++i)
      for (int j = 0; j < re.nfp; ++j) emat(re.face_nodes[f][static_cast<std::size_t>(i)], j) = mass_1d(i, j);
    re.lift[f] = re.v * (re.v.transpose() * emat);
  }

  return re;
}

Vector ReferenceElement::nodal_to_modal(const Vector& nodal) const {
  require(nodal.size() == np, "nodal_to_modal: length mismatch");
  return vinv * nodal;
}

Vector ReferenceElement::modal_to_nodal(const Vector& modal) const {
  require(modal.size() == np, "modal_to_nodal: length mismatch");
  return v * modal;
}

Matrix interpolation_matrix(const ReferenceElement& re, const Vector& r, const Vector& s) {
  return vandermonde_2d(re.order, r, s) * re.vinv;
}

} // namespace redist

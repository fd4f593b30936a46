#include "redist/discretization.hpp"

#include "redist/fv_subcell.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace redist;

namespace {

Discretization make_disc(double edge, int order, double half = 2.0) {
  return Discretization(generate_square_mesh(half, edge), order);
}

} // namespace

TEST_CASE("gradients are exact for a global linear field") {
  for (int n : {1, 3, 5}) {
    Discretization d = make_disc(0.5, n);
    Matrix f = d.sample([](double x, double y) { return 3.0 * x - 2.0 * y; });
    GradientPair gp = ldg_gradients(d, f);
    CHECK((gp.px.array() - 3.0).abs().maxCoeff() < 1e-10);
    CHECK((gp.qx.array() - 3.0).abs().maxCoeff() < 1e-10);
    CHECK((gp.py.array() + 2.0).abs().maxCoeff() < 1e-10);
    CHECK((gp.qy.array() + 2.0).abs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("gradients of a constant vanish") {
  Discretization d = make_disc(0.5, 3);
  Matrix f = Matrix::Constant(d.re.np, d.num_elements(), 4.25);
  GradientPair gp = ldg_gradients(d, f);
  CHECK(gp.px.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(gp.py.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(gp.qx.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(gp.qy.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("single element with zero-jump boundary sees its own gradient") {
  Mesh single;
  single.vertices.resize(3, 2);
  single.vertices << 0, 0, 1, 0, 0, 1;
  single.elements.resize(1, 3);
  single.elements << 0, 1, 2;
  build_connectivity(single);
  Discretization d(single, 4);
  Matrix f = d.sample([](double x, double) { return x; });
  GradientPair gp = ldg_gradients(d, f);
  CHECK((gp.px.array() - 1.0).abs().maxCoeff() < 1e-11);
  CHECK((gp.qx.array() - 1.0).abs().maxCoeff() < 1e-11);
  CHECK(gp.py.cwiseAbs().maxCoeff() < 1e-11);
  CHECK(gp.qy.cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("LLF Hamiltonian consistency and dissipation") {
  // p = q => H = |p| with no dissipation
  Vector px = Vector::Constant(4, 1.0), py = Vector::Zero(4);
  Vector h = llf_hamiltonian_column(px, py, px, py);
  CHECK((h.array() - 1.0).abs().maxCoeff() < 1e-14);

  Vector z = Vector::Zero(4);
  CHECK(llf_hamiltonian_column(z, z, z, z).cwiseAbs().maxCoeff() == 0.0);

  // one-sided gradient: H = |avg| - (a1/2)(q1-p1) = 1 + a1 with a1 = 1
  Vector p2 = Vector::Constant(1, 2.0), q0 = Vector::Zero(1);
  Vector h2 = llf_hamiltonian_column(p2, q0, q0, q0);
  CHECK(std::abs(h2(0) - 2.0) < 1e-14);

  // 1D LLF oracle: H(u-, u+) = |(u-+u+)/2| - (a/2)(u+ - u-), a = max|H'| = 1
  auto llf_1d = [](double um, double up) {
    const double avg = 0.5 * (um + up);
    return std::abs(avg) - 0.5 * (up - um);
  };
  CHECK(std::abs(h2(0) - llf_1d(2.0, 0.0)) < 1e-14);

  double a1, a2;
  llf_alpha(p2, q0, q0, q0, a1, a2);
  CHECK(a1 >= 0.0);
  CHECK(a2 >= 0.0);
  CHECK(a1 <= 1.0);
  CHECK(a2 <= 1.0);
}

TEST_CASE("smooth RHS is exact on linear data and zero on constants") {
  Discretization d = make_disc(0.4, 3);
  const int k = d.num_elements();
  std::vector<uint8_t> none(static_cast<std::size_t>(k), 0);
  SpatialOptions opt;
  RhsWorkspace ws;
  Matrix dn, dm;

  FieldData f;
  f.nodal = d.sample([](double x, double y) { return 3.0 * x - 2.0 * y; });
  f.means = Matrix::Zero(d.sg.ns, k);
  compute_rhs(d, f, none, none, opt, dn, dm, ws);
  CHECK((dn.array() + std::sqrt(13.0)).abs().maxCoeff() < 1e-9);

  f.nodal = Matrix::Constant(d.re.np, k, -1.3);
  compute_rhs(d, f, none, none, opt, dn, dm, ws);
  CHECK(dn.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("mirrored initial data evolves with the same rate") {
  // v = -u at t = 0: interface jumps vanish, so dv/dt = du/dt exactly
  Discretization d = make_disc(0.4, 4);
  const int k = d.num_elements();
  std::vector<uint8_t> none(static_cast<std::size_t>(k), 0);
  SpatialOptions opt;
  RhsWorkspace ws;

  FieldData u, v;
  u.nodal = d.sample([](double x, double y) {
    return ((x - 1.0) * (x - 1.0) + (y - 1.0) * (y - 1.0) + 0.1) * (std::hypot(x, y) - 1.0);
  });
  v.nodal = -u.nodal;
  u.means = Matrix::Zero(d.sg.ns, k);
  v.means = u.means;

  Matrix du, dv, dm;
  compute_rhs(d, u, none, none, opt, du, dm, ws);
  compute_rhs(d, v, none, none, opt, dv, dm, ws);
  CHECK((du - dv).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("hybrid RHS with no troubled elements matches the standalone gradients") {
  Discretization d = make_disc(0.5, 3);
  const int k = d.num_elements();
  std::vector<uint8_t> none(static_cast<std::size_t>(k), 0);
  FieldData f;
  f.nodal = d.sample([](double x, double y) { return std::sin(x) * std::cos(y) + 0.3 * x; });
  f.means = Matrix::Zero(d.sg.ns, k);

  SpatialOptions opt;
  RhsWorkspace ws;
  Matrix dn, dm;
  compute_rhs(d, f, none, none, opt, dn, dm, ws);

  GradientPair gp = ldg_gradients(d, f.nodal);
  Matrix h = llf_hamiltonian(gp);
  CHECK((dn + h).cwiseAbs().maxCoeff() < 1e-12);
}

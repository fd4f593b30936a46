#include "redist/ref_element.hpp"

#include "redist/jacobi.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <Eigen/SVD>
#include <set>

using namespace redist;

namespace {

double monomial(double r, double s, int a, int b) { return std::pow(r, a) * std::pow(s, b); }

} // namespace

TEST_CASE("node counts and vertex nodes") {
  NodeSet n1 = warp_blend_nodes(1);
  CHECK(n1.r.size() == 3);
  std::set<std::pair<int, int>> verts;
  for (int i = 0; i < 3; ++i)
    verts.insert({static_cast<int>(std::lround(n1.r(i))), static_cast<int>(std::lround(n1.s(i)))});
  CHECK(verts == std::set<std::pair<int, int>>{{-1, -1}, {1, -1}, {-1, 1}});

  NodeSet n5 = warp_blend_nodes(5);
  CHECK(n5.r.size() == 21);
  int per_edge = 0;
  for (Eigen::Index i = 0; i < n5.r.size(); ++i)
    if (std::abs(n5.s(i) + 1.0) < 1e-12) ++per_edge;
  CHECK(per_edge == 6);

  CHECK_THROWS_AS(warp_blend_nodes(0), ConfigError);
  CHECK_THROWS_AS(warp_blend_nodes(16), ConfigError);
}

TEST_CASE("node set is symmetric under rs swap") {
  for (int n : {2, 3, 5, 7}) {
    NodeSet ns = warp_blend_nodes(n);
    for (Eigen::Index i = 0; i < ns.r.size(); ++i) {
      double best = 1e9;
      for (Eigen::Index j = 0; j < ns.r.size(); ++j)
        best = std::min(best, std::hypot(ns.r(i) - ns.s(j), ns.s(i) - ns.r(j)));
      CHECK(best < 1e-12);
    }
  }
}

TEST_CASE("linear mass matrix matches symbolic integration") {
  // exact P1 mass on the area-2 bi-unit triangle
  ReferenceElement re = build_reference_element(1);
  Matrix expected(3, 3);
  expected << 2, 1, 1, 1, 2, 1, 1, 1, 2;
  expected /= 6.0;
  CHECK((re.mass - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("mass matrix integrates monomial pairs exactly") {
  for (int n : {2, 3, 4}) {
    ReferenceElement re = build_reference_element(n);
    CHECK(std::abs(re.mass.sum() - 2.0) < 1e-12); // (1, 1) = area

    for (int a = 0; a <= n; ++a) {
      for (int b = 0; a + b <= n; ++b) {
        Vector f(re.np);
        for (int i = 0; i < re.np; ++i) f(i) = monomial(re.r(i), re.s(i), a, b);
        const double via_mass = (re.mass * f).sum();
        CHECK(std::abs(via_mass - oracle::biunit_monomial(a, b)) < 1e-11);
      }
    }
  }
}

TEST_CASE("derivative operators are exact for monomials up to N") {
  for (int n = 1; n <= 7; ++n) {
    ReferenceElement re = build_reference_element(n);
    CHECK(re.dr.rowwise().sum().cwiseAbs().maxCoeff() < 1e-12);
    CHECK(re.ds.rowwise().sum().cwiseAbs().maxCoeff() < 1e-12);

    Vector rs(re.np);
    for (int i = 0; i < re.np; ++i) rs(i) = re.r(i);
    CHECK(((re.dr * rs).array() - 1.0).abs().maxCoeff() < 1e-12);

    for (int a = 0; a <= n; ++a) {
      for (int b = 0; a + b <= n; ++b) {
        Vector f(re.np), fr(re.np), fs(re.np);
        for (int i = 0; i < re.np; ++i) {
          f(i) = monomial(re.r(i), re.s(i), a, b);
          fr(i) = a == 0 ? 0.0 : a * monomial(re.r(i), re.s(i), a - 1, b);
          fs(i) = b == 0 ? 0.0 : b * monomial(re.r(i), re.s(i), a, b - 1);
        }
        CHECK((re.dr * f - fr).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((re.ds * f - fs).cwiseAbs().maxCoeff() < 1e-10);
      }
    }
  }
}

TEST_CASE("Vandermonde inverse, SPD mass, conditioning guard") {
  for (int n = 1; n <= 7; ++n) {
    ReferenceElement re = build_reference_element(n);
    CHECK((re.v * re.vinv - Matrix::Identity(re.np, re.np)).cwiseAbs().maxCoeff() < 1e-11);

    Eigen::SelfAdjointEigenSolver<Matrix> eig(re.mass);
    CHECK(eig.eigenvalues().minCoeff() > 0.0);
    CHECK((re.mass - re.mass.transpose()).cwiseAbs().maxCoeff() < 1e-14);

    Eigen::JacobiSVD<Matrix> svd(re.v);
    const double cond = svd.singularValues()(0) / svd.singularValues().tail(1)(0);
    CHECK(cond < 1e4);
  }
}

TEST_CASE("face nodes sit at Gauss-Lobatto points along each face") {
  for (int n : {1, 2, 3, 5, 7}) {
    ReferenceElement re = build_reference_element(n);
    const Vector gl = jacobi_gl(0.0, 0.0, n);
    for (int f = 0; f < 3; ++f) {
      for (int i = 0; i <= n; ++i) {
        const int id = re.face_nodes[static_cast<std::size_t>(f)][static_cast<std::size_t>(i)];
        double xi = 0.0; // face parameter along v_f -> v_{f+1}
        if (f == 0) xi = re.r(id);
        if (f == 1) xi = re.s(id);
        if (f == 2) xi = -re.s(id);
        CHECK(std::abs(xi - gl(i)) < 1e-10);
      }
    }
  }
}

TEST_CASE("face mass integrates traces like 1D quadrature") {
  for (int n = 1; n <= 5; ++n) {
    ReferenceElement re = build_reference_element(n);
    Matrix v1d = vandermonde_1d(n, re.face_xi);
    Matrix mass1d = (v1d * v1d.transpose()).inverse();

    auto trace = [n](double xi) { return std::pow(xi + 0.3, n); };
    Vector tr(re.nfp);
    for (int i = 0; i < re.nfp; ++i) tr(i) = trace(re.face_xi(i));
    const double via_mass = (mass1d * tr).sum();
    const double ref = oracle::integrate_1d(trace, -1.0, 1.0);
    CHECK(std::abs(via_mass - ref) < 1e-10);
  }
}

TEST_CASE("lift applies the face mass") {
  for (int n : {2, 4}) {
    ReferenceElement re = build_reference_element(n);
    Matrix v1d = vandermonde_1d(n, re.face_xi);
    Matrix mass1d = (v1d * v1d.transpose()).inverse();
    for (int f = 0; f < 3; ++f) {
      Matrix emat = Matrix::Zero(re.np, re.nfp);
      for (int i = 0; i < re.nfp; ++i)
        for (int j = 0; j < re.nfp; ++j)
          emat(re.face_nodes[static_cast<std::size_t>(f)][static_cast<std::size_t>(i)], j) =
              mass1d(i, j);
      CHECK((re.mass * re.lift[static_cast<std::size_t>(f)] - emat).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("nodal/modal transforms") {
  ReferenceElement re = build_reference_element(4);

  Vector ones = Vector::Ones(re.np);
  Vector modal = re.nodal_to_modal(ones);
  for (int m = 1; m < re.np; ++m) CHECK(std::abs(modal(m)) < 1e-12);
  CHECK((re.modal_to_nodal(modal) - ones).cwiseAbs().maxCoeff() < 1e-12);

  CHECK(re.nodal_to_modal(Vector::Zero(re.np)).cwiseAbs().maxCoeff() == 0.0);

  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector rnd(re.np);
  for (int i = 0; i < re.np; ++i) rnd(i) = dist(oracle::rng());
  CHECK((re.modal_to_nodal(re.nodal_to_modal(rnd)) - rnd).cwiseAbs().maxCoeff() < 1e-11);

  CHECK_THROWS_AS(re.nodal_to_modal(Vector::Zero(re.np + 1)), ConfigError);
}

#include "redist/metrics.hpp"

#include "redist/cases.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace redist;

namespace {

Discretization make_disc(double edge, int order) {
  return Discretization(generate_square_mesh(2.0, edge), order);
}

} // namespace

TEST_CASE("exact fields have zero error norms") {
  Discretization d = make_disc(0.4, 3);
  TestCase tc = case_circle();
  Matrix exact = d.sample(tc.exact);
  double l2, linf;
  banded_norms(d, exact, exact, 0.3, l2, linf);
  CHECK(l2 == 0.0);
  CHECK(linf == 0.0);
  CHECK(interface_l1(d, exact, exact, 0.4, tc.interface_length) == 0.0);
}

TEST_CASE("constant error on the band gives c sqrt(area) and c") {
  Discretization d = make_disc(0.4, 2);
  TestCase tc = case_circle();
  Matrix exact = d.sample(tc.exact);
  const double c = 0.37;
  Matrix phi = exact.array() + c;

  const auto in_band = band_elements(exact, 0.3);
  double band_area = 0.0;
  for (int e = 0; e < d.num_elements(); ++e)
    if (in_band[static_cast<std::size_t>(e)]) band_area += 2.0 * d.geom.jac(e);

  double l2, linf;
  banded_norms(d, phi, exact, 0.3, l2, linf);
  CHECK(std::abs(linf - c) < 1e-13);
  CHECK(std::abs(l2 - c * std::sqrt(band_area)) < 1e-12);
}

TEST_CASE("band membership excludes the distance kink at the origin") {
  Discretization d = make_disc(0.4, 3);
  TestCase tc = case_circle();
  Matrix exact = d.sample(tc.exact);
  const auto in_band = band_elements(exact, 0.3);

  int origin_element = -1;
  for (int e = 0; e < d.num_elements(); ++e) {
    // element whose nodes reach closest to the origin
    if (d.node_x.col(e).cwiseAbs().maxCoeff() < 0.45 &&
        d.node_y.col(e).cwiseAbs().maxCoeff() < 0.45)
      origin_element = e;
  }
  REQUIRE(origin_element >= 0);
  CHECK(in_band[static_cast<std::size_t>(origin_element)] == 0);

  int band_count = 0;
  for (auto b : in_band) band_count += b;
  CHECK(band_count > 0);
  CHECK(band_count < d.num_elements());

  double l2, linf;
  CHECK_THROWS_AS(banded_norms(d, exact, exact.array() + 100.0, 0.3, l2, linf), ConfigError);
}

TEST_CASE("smoothed Heaviside limits and antisymmetry") {
  CHECK(smoothed_heaviside(0.0, 0.1) == 0.5);
  CHECK(smoothed_heaviside(1e9, 0.1) == doctest::Approx(1.0));
  CHECK(smoothed_heaviside(-1e9, 0.1) == doctest::Approx(0.0));
  for (double phi : {0.01, 0.3, 0.9}) { // within the non-saturated tanh range
    CHECK(smoothed_heaviside(phi, 0.2) > 0.0);
    CHECK(smoothed_heaviside(phi, 0.2) < 1.0);
    CHECK(std::abs(smoothed_heaviside(-phi, 0.2) + smoothed_heaviside(phi, 0.2) - 1.0) < 1e-15);
  }
}

TEST_CASE("uniform shift near a straight interface reads as displacement") {
  // 1D oracle: integral of H((x+d)) - H(x) over the line equals d
  Discretization d = make_disc(0.2, 4);
  TestCase tc = case_plane();
  Matrix exact = d.sample(tc.exact); // x
  const double h = 0.2;
  const double delta = 0.01; // much smaller than h

  Matrix shifted = exact.array() + delta;
  // interface length of the x = 0 line inside the [-2,2]^2 domain is 4
  const double l1 = interface_l1(d, shifted, exact, h, 4.0);

  auto integrand = [&](double x) {
    return smoothed_heaviside(x + delta, h) - smoothed_heaviside(x, h);
  };
  const double oracle_val = oracle::integrate_1d(integrand, -2.0, 2.0);
  CHECK(std::abs(oracle_val - delta) < 1e-9); // displacement interpretation
  // nodal-mass quadrature of the tanh profile carries a small relative error
  CHECK(std::abs(l1 - oracle_val) < 0.01 * delta);
  CHECK(std::abs(l1 - delta) < 0.01 * delta);
}

TEST_CASE("norm homogeneity and band monotonicity") {
  Discretization d = make_disc(0.4, 3);
  TestCase tc = case_circle();
  Matrix exact = d.sample(tc.exact);
  Matrix err = d.sample([](double x, double y) { return 0.05 * std::sin(3 * x) * std::cos(y); });

  double l2a, linfa, l2b, linfb;
  banded_norms(d, exact + err, exact, 0.3, l2a, linfa);
  banded_norms(d, exact + 3.0 * err, exact, 0.3, l2b, linfb);
  CHECK(std::abs(l2b - 3.0 * l2a) < 1e-12);
  CHECK(std::abs(linfb - 3.0 * linfa) < 1e-13);

  double l2w, linfw;
  banded_norms(d, exact + err, exact, 0.6, l2w, linfw);
  CHECK(linfw >= linfa - 1e-15);
  CHECK(l2w >= l2a - 1e-15);
}

TEST_CASE("observed order arithmetic") {
  auto orders = observed_order({1.0, 1.0 / 16.0}, {1.0, 0.5});
  REQUIRE(orders.size() == 1);
  CHECK(std::abs(*orders[0] - 4.0) < 1e-12);

  std::vector<double> e, h;
  for (int l = 0; l < 4; ++l) {
    h.push_back(std::pow(0.5, l));
    e.push_back(0.7 * std::pow(h.back(), 4.0));
  }
  for (const auto& o : observed_order(e, h)) CHECK(std::abs(*o - 4.0) < 1e-12);

  auto mixed = observed_order({1e-3, 2.5e-4}, {0.4, 0.2});
  CHECK(std::abs(*mixed[0] - 2.0) < 1e-12);

  auto zero = observed_order({1e-3, 0.0}, {0.4, 0.2});
  CHECK_FALSE(zero[0].has_value());

  CHECK_THROWS_AS(observed_order({1.0}, {1.0}), ConfigError);
  CHECK_THROWS_AS(observed_order({1.0, 1.0}, {0.5, 1.0}), ConfigError);
}

TEST_CASE("nodal band norms restrict to nodes inside the band") {
  Discretization d = make_disc(0.4, 3);
  TestCase tc = case_circle();
  Matrix exact = d.sample(tc.exact);

  // error supported only outside |exact| <= 0.1 leaves the nodal band clean
  Matrix phi = exact;
  for (int e = 0; e < d.num_elements(); ++e)
    for (int n = 0; n < d.re.np; ++n)
      if (std::abs(exact(n, e)) > 0.1) phi(n, e) += 1.0;

  double l2, linf;
  nodal_banded_norms(d, phi, exact, 0.1, l2, linf);
  CHECK(linf == 0.0);
  CHECK(l2 == 0.0);

  // the elemental band sees it (same elements contain outside nodes)
  banded_norms(d, phi, exact, 0.1, l2, linf);
  CHECK(linf == 1.0);
}

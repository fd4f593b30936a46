#include "redist/cases.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <numbers>

using namespace redist;

TEST_CASE("circle: frozen values") {
  TestCase tc = case_circle();
  CHECK(std::abs(tc.phi0(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(tc.exact(2.0, 0.0) - 1.0) < 1e-15);
  CHECK(std::abs(tc.phi0(0.0, 0.0) - (-2.1)) < 1e-15);
  CHECK(std::abs(tc.interface_length - 2.0 * std::numbers::pi) < 1e-15);
}

TEST_CASE("ellipse: sampled distance reference") {
  TestCase tc = case_ellipse();
  CHECK(std::abs(tc.phi0(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(tc.exact(0.0, 0.0) - (-0.5)) < 1e-6); // nearest points (0, +-0.5)

  // sample-count doubling barely moves the values
  TestCase fine = case_ellipse(200000);
  for (auto [x, y] : std::vector<std::pair<double, double>>{
           {0.3, 0.4}, {-1.2, 0.1}, {0.9, -0.8}, {1.7, 1.3}})
    CHECK(std::abs(tc.exact(x, y) - fine.exact(x, y)) < 1e-8);

  // perimeter of a 1 x 0.5 ellipse (Ramanujan-type value)
  CHECK(tc.interface_length > 4.84);
  CHECK(tc.interface_length < 4.85);
}

TEST_CASE("intersecting circles: branch values against the direct formula") {
  TestCase tc = case_intersecting_circles();
  const double corner = std::sqrt(1.0 - 0.49);

  CHECK(std::abs(tc.exact(0.0, corner)) < 1e-14);  // corner on the interface
  CHECK(std::abs(tc.exact(2.7, 0.0) - 1.0) < 1e-14); // 1 outside the right circle
  CHECK(std::abs(tc.exact(0.7, 0.0) - (-1.0)) < 1e-14); // right center
  // deep lens point: the nearest visible boundary is a corner
  CHECK(std::abs(tc.exact(0.3, 0.0) - (-std::sqrt(0.6))) < 1e-14);
  // wedge above the corners: positive corner distance
  CHECK(std::abs(tc.exact(0.0, corner + 0.25) - 0.25) < 1e-14);
}

TEST_CASE("square: closed-form distance") {
  TestCase tc = case_square();
  CHECK(std::abs(tc.exact(2.0, 2.0) - std::numbers::sqrt2) < 1e-14);
  CHECK(std::abs(tc.exact(0.0, 0.0) - (-1.0)) < 1e-15);
  CHECK(std::abs(tc.phi0(0.0, 0.0) - (-0.8)) < 1e-15);
  CHECK(std::abs(tc.exact(1.5, 0.2) - 0.5) < 1e-15);
  CHECK(tc.interface_length == 8.0);
}

TEST_CASE("multi-circle: centers, ties, and the minimum structure") {
  TestCase tc = case_multi_circle();
  const auto layout = default_multi_circle_layout();
  CHECK(layout.size() == 12);

  for (const auto& c : layout) {
    CHECK(std::abs(tc.exact(c.x, c.y) - (-c.r)) < 1e-14);
    CHECK(std::abs(c.x) <= 1.5);
    CHECK(std::abs(c.y) <= 1.5);
  }

  // midpoint between two equal circles: both give the same value
  const auto& a = layout[4];
  const auto& b = layout[5];
  const double mx = 0.5 * (a.x + b.x), my = 0.5 * (a.y + b.y);
  const double da = std::hypot(mx - a.x, my - a.y) - a.r;
  CHECK(std::abs(tc.exact(mx, my) - da) < 1e-14);

  // brute-force minimum over the 12 analytic distances
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double x = dist(oracle::rng()), y = dist(oracle::rng());
    double dmin = 1e9;
    for (const auto& c : layout) dmin = std::min(dmin, std::hypot(x - c.x, y - c.y) - c.r);
    CHECK(std::abs(tc.exact(x, y) - dmin) < 1e-14);
  }

  // custom layout override
  TestCase one = case_multi_circle({{0.0, 0.0, 1.0}});
  CHECK(std::abs(one.exact(2.0, 0.0) - 1.0) < 1e-15);
}

TEST_CASE("gradients of the exact distances have unit magnitude") {
  std::uniform_real_distribution<double> dist(-1.9, 1.9);
  for (const std::string name : {"circle", "xcircles", "square", "multi"}) {
    TestCase tc = make_case(name);
    int checked = 0;
    for (int trial = 0; trial < 4000 && checked < 400; ++trial) {
      const double x = dist(oracle::rng()), y = dist(oracle::rng());
      // stay away from kinks: probe needs a locally smooth neighborhood
      const double g0 = oracle::fd_gradient_norm(tc.exact, x, y, 1e-5);
      const double g1 = oracle::fd_gradient_norm(tc.exact, x, y, 2e-5);
      if (std::abs(g0 - g1) > 1e-7) continue;
      ++checked;
      CHECK(std::abs(g0 - 1.0) < 1e-6);
    }
    CHECK(checked >= 400);
  }
}

TEST_CASE("initial data and exact distance share signs") {
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (const std::string name : {"circle", "ellipse", "xcircles", "square", "multi", "plane"}) {
    TestCase tc = make_case(name);
    for (int trial = 0; trial < 500; ++trial) {
      const double x = dist(oracle::rng()), y = dist(oracle::rng());
      const double p = tc.phi0(x, y), e = tc.exact(x, y);
      if (std::abs(e) < 1e-12) continue;
      CHECK(p * e > 0.0);
    }
  }
}

TEST_CASE("closed-form distances agree with dense curve sampling") {
  using oracle::CurveSampler;
  std::uniform_real_distribution<double> dist(-1.95, 1.95);
  const int samples = 400000;

  auto check_case = [&](const TestCase& tc, const CurveSampler& curve, int probes) {
    for (int trial = 0; trial < probes; ++trial) {
      const double x = dist(oracle::rng()), y = dist(oracle::rng());
      const double d = curve.unsigned_distance(x, y);
      // the sampled-curve reference resolves distances d to ~(spacing^2 / d);
      // probes nearly on the curve are outside its resolution
      if (d < 0.01) continue;
      CHECK(std::abs(std::abs(tc.exact(x, y)) - d) < 1e-6);
    }
  };

  {
    CurveSampler curve;
    curve.add_curve([](double t) {
      const double th = 2.0 * std::numbers::pi * t;
      return std::pair{std::cos(th), std::sin(th)};
    }, samples);
    check_case(case_circle(), curve, 250);
  }
  {
    // union boundary of the two intersecting circles: keep only the arc
    // points lying outside the other circle
    const double r = 1.0, a = 0.7;
    CurveSampler curve;
    for (double cx : {-a, a}) {
      for (int i = 0; i < samples / 2; ++i) {
        const double th = 2.0 * std::numbers::pi * i / (samples / 2);
        const double x = cx + r * std::cos(th), y = r * std::sin(th);
        if (std::hypot(x + cx, y) >= r - 1e-12) { // other center is -cx
          curve.xs.push_back(x);
          curve.ys.push_back(y);
        }
      }
    }
    check_case(case_intersecting_circles(), curve, 250);
  }
  {
    CurveSampler curve;
    curve.add_curve([](double t) {
      // perimeter of the square |x|,|y| <= 1
      const double s = 8.0 * t;
      if (s < 2.0) return std::pair{-1.0 + s, -1.0};
      if (s < 4.0) return std::pair{1.0, -1.0 + (s - 2.0)};
      if (s < 6.0) return std::pair{1.0 - (s - 4.0), 1.0};
      return std::pair{-1.0, 1.0 - (s - 6.0)};
    }, samples);
    check_case(case_square(), curve, 250);
  }
  {
    CurveSampler curve;
    for (const auto& c : default_multi_circle_layout())
      curve.add_curve([c](double t) {
        const double th = 2.0 * std::numbers::pi * t;
        return std::pair{c.x + c.r * std::cos(th), c.y + c.r * std::sin(th)};
      }, samples / 12);
    check_case(case_multi_circle(), curve, 250);
  }
}

TEST_CASE("unknown case names are rejected") {
  CHECK_THROWS_AS(make_case("blob"), ConfigError);
}

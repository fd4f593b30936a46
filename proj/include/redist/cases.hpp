#pragma once

#include "redist/types.hpp"

#include <functional>
#include <string>
#include <vector>

namespace redist {

/// Analytic benchmark: distorted initial level set plus an exact (or densely
/// sampled) signed distance reference sharing the same zero set.
struct TestCase {
  std::string name;
  std::function<double(double, double)> phi0;
  std::function<double(double, double)> exact;
  double interface_length = 0.0;
  double half_extent = 2.0;          // domain [-L, L]^2
  double default_final_time = 0.0;   // 0: derive from the band
  double suggested_band = 0.3;
};

TestCase case_circle();
TestCase case_ellipse(int samples = 100000);
TestCase case_intersecting_circles();
TestCase case_square();

struct CircleSpec {
  double x, y, r;
};
/// 12 radius-0.35 circles on a staggered 3-row lattice by default.
TestCase case_multi_circle(const std::vector<CircleSpec>& circles = {});
std::vector<CircleSpec> default_multi_circle_layout();

/// Plane interface x = 0 with a perturbed initial level set; the exact
/// distance is x itself. Diagnostic case for the temporal-order study.
TestCase case_plane();

TestCase make_case(const std::string& name, const std::vector<CircleSpec>& multi_layout = {});

} // namespace redist

#include "redist/cases.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

namespace redist {

namespace {

double perturbation(double x, double y) {
  return (x - 1.0) * (x - 1.0) + (y - 1.0) * (y - 1.0) + 0.1;
}

/// Uniform-grid nearest-neighbor index over a fixed point cloud.
class PointCloudDistance {
public:
  PointCloudDistance(std::vector<double> xs, std::vector<double> ys, double lo, double hi)
      : xs_(std::move(xs)), ys_(std::move(ys)), lo_(lo) {
    ncell_ = 256;
    cell_ = (hi - lo) / ncell_;
    buckets_.resize(static_cast<std::size_t>(ncell_) * static_cast<std::size_t>(ncell_));
    for (std::size_t i = 0; i < xs_.size(); ++i)
      buckets_[bucket_of(xs_[i], ys_[i])].push_back(static_cast<int>(i));
  }

  double min_distance(double x, double y) const {
    const int ci = clampi(static_cast<int>((x - lo_) / cell_));
    const int cj = clampi(static_cast<int>((y - lo_) / cell_));
    double best = std::numeric_limits<double>::infinity();
    for (int ring = 0; ring < ncell_; ++ring) {
      bool any = false;
      for (int j = cj - ring; j <= cj + ring; ++j) {
        for (int i = ci - ring; i <= ci + ring; ++i) {
          if (std::max(std::abs(i - ci), std::abs(j - cj)) != ring) continue;
          if (i < 0 || j < 0 || i >= ncell_ || j >= ncell_) continue;
          any = true;
          for (int id : buckets_[static_cast<std::size_t>(j) * static_cast<std::size_t>(ncell_) +
                                 static_cast<std::size_t>(i)])
            best = std::min(best, std::hypot(x - xs_[static_cast<std::size_t>(id)],
                                             y - ys_[static_cast<std::size_t>(id)]));
        }
      }
      // one extra ring guarantees no closer point hides behind a cell border
      if (std::isfinite(best) && ring >= 1 &&
          best <= (ring - 1) * cell_)
        break;
      if (!any && ring > 2 * ncell_) break;
    }
    return best;
  }

private:
  int clampi(int i) const { return std::clamp(i, 0, ncell_ - 1); }
  std::size_t bucket_of(double x, double y) const {
    return static_cast<std::size_t>(clampi(static_cast<int>((y - lo_) / cell_))) *
               static_cast<std::size_t>(ncell_) +
           static_cast<std::size_t>(clampi(static_cast<int>((x - lo_) / cell_)));
  }

  std::vector<double> xs_, ys_;
  double lo_, cell_;
  int ncell_;
  std::vector<std::vector<int>> buckets_;
};

} // namespace

TestCase case_circle() {
  TestCase tc;
  tc.name = "circle";
  tc.exact = [](double x, double y) { return std::hypot(x, y) - 1.0; };
  tc.phi0 = [ex = tc.exact](double x, double y) { return perturbation(x, y) * ex(x, y); };
  tc.interface_length = 2.0 * std::numbers::pi;
  tc.half_extent = 2.0;
  tc.default_final_time = 0.0;
  tc.suggested_band = 0.3;
  return tc;
}

TestCase case_ellipse(int samples) {
  const double a = 1.0, b = 0.5, x0 = 0.875, y0 = 0.5;
  auto pseudo = [=](double x, double y) {
    return ((x - x0) * (x - x0) + (y - y0) * (y - y0) + 0.1) *
           (std::sqrt(x * x / (a * a) + y * y / (b * b)) - 1.0);
  };

  std::vector<double> xs(static_cast<std::size_t>(samples)), ys(xs.size());
  double perimeter = 0.0;
  for (int n = 0; n < samples; ++n) {
    const double th = 2.0 * std::numbers::pi * n / samples;
    xs[static_cast<std::size_t>(n)] = a * std::cos(th);
    ys[static_cast<std::size_t>(n)] = b * std::sin(th);
    if (n > 0)
      perimeter += std::hypot(xs[static_cast<std::size_t>(n)] - xs[static_cast<std::size_t>(n - 1)],
                              ys[static_cast<std::size_t>(n)] - ys[static_cast<std::size_t>(n - 1)]);
  }
  perimeter += std::hypot(xs.front() - xs.back(), ys.front() - ys.back());

  auto cloud = std::make_shared<PointCloudDistance>(std::move(xs), std::move(ys), -1.5, 1.5);

  TestCase tc;
  tc.name = "ellipse";
  tc.phi0 = pseudo;
  tc.exact = [cloud, pseudo](double x, double y) {
    const double d = cloud->min_distance(x, y);
    return pseudo(x, y) >= 0.0 ? d : -d;
  };
  tc.interface_length = perimeter;
  tc.half_extent = 2.0;
  tc.default_final_time = 1.5;
  tc.suggested_band = 0.3;
  return tc;
}

TestCase case_intersecting_circles() {
  const double r = 1.0, a = 0.7;
  const double corner = std::sqrt(r * r - a * a);
  auto dist = [=](double x, double y) {
    const double rho1 = std::hypot(x + a, y); // center (-a, 0)
    const double rho2 = std::hypot(x - a, y); // center (+a, 0)
    const double den1 = std::hypot(a - x, y);
    const double den2 = std::hypot(a + x, y);
    const bool cone = den1 > 0.0 && den2 > 0.0 && (a - x) / den1 >= a / r &&
                      (a + x) / den2 >= a / r;
    if (cone) {
      // nearest boundary point is one of the intersection corners
      const double dc = std::min(std::hypot(x, y - corner), std::hypot(x, y + corner));
      const bool inside = std::min(rho1, rho2) < r; // interior of the union
      return inside ? -dc : dc;
    }
    return std::min(rho1 - r, rho2 - r);
  };

  TestCase tc;
  tc.name = "xcircles";
  tc.exact = dist;
  tc.phi0 = [dist](double x, double y) { return perturbation(x, y) * dist(x, y); };
  // interface length: two major arcs, each cut by the half-angle of the lens
  const double half_angle = std::acos(a / r);
  tc.interface_length = 2.0 * (2.0 * std::numbers::pi - 2.0 * half_angle) * r;
  tc.half_extent = 2.0;
  tc.default_final_time = 1.0;
  tc.suggested_band = 0.3;
  return tc;
}

TestCase case_square() {
  const double w = 2.0, xc = 0.0, yc = 0.0;
  auto dist = [=](double x, double y) {
    const double dx = std::abs(x - xc) - 0.5 * w;
    const double dy = std::abs(y - yc) - 0.5 * w;
    const double ox = std::max(dx, 0.0), oy = std::max(dy, 0.0);
    return std::hypot(ox, oy) + std::min(std::max(dx, dy), 0.0);
  };

  TestCase tc;
  tc.name = "square";
  tc.exact = dist;
  tc.phi0 = [=](double x, double y) {
    return 0.8 * std::max(std::abs(x - xc) - 0.5 * w, std::abs(y - yc) - 0.5 * w);
  };
  tc.interface_length = 4.0 * w;
  tc.half_extent = 2.0;
  tc.default_final_time = 1.5;
  tc.suggested_band = 0.3;
  return tc;
}

std::vector<CircleSpec> default_multi_circle_layout() {
  std::vector<CircleSpec> circles;
  const double r = 0.35;
  const double rows[3] = {-1.05, 0.0, 1.05};
  const double cols[3][4] = {{-1.50, -0.60, 0.30, 1.20},
                             {-1.35, -0.45, 0.45, 1.35},
                             {-1.20, -0.30, 0.60, 1.50}};
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 4; ++i) circles.push_back({cols[j][i], rows[j], r});
  return circles;
}

TestCase case_multi_circle(const std::vector<CircleSpec>& circles) {
  const std::vector<CircleSpec> layout = circles.empty() ? default_multi_circle_layout() : circles;
  require(!layout.empty(), "multi-circle case needs at least one circle");

  auto dist = [layout](double x, double y) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& c : layout) d = std::min(d, std::hypot(x - c.x, y - c.y) - c.r);
    return d;
  };

  TestCase tc;
  tc.name = "multi";
  tc.exact = dist;
  tc.phi0 = [dist](double x, double y) { return perturbation(x, y) * dist(x, y); };
  double len = 0.0;
  for (const auto& c : layout) len += 2.0 * std::numbers::pi * c.r;
  tc.interface_length = len;
  tc.half_extent = 2.0;
  tc.default_final_time = 1.1;
  tc.suggested_band = 0.3;
  return tc;
}

TestCase case_plane() {
  // Monotone non-polynomial profile of the plane x = 0: the flow stays
  // globally smooth (u(x,t) = g(x - t)), which makes the temporal accuracy
  // of the arrival roots cleanly measurable.
  TestCase tc;
  tc.name = "plane";
  tc.exact = [](double x, double) { return x; };
  tc.phi0 = [](double x, double) { return x + 0.3 * std::sin(2.0 * x); };
  tc.interface_length = 4.0;
  tc.half_extent = 2.0;
  tc.default_final_time = 1.2;
  tc.suggested_band = 0.5;
  return tc;
}

TestCase make_case(const std::string& name, const std::vector<CircleSpec>& multi_layout) {
  if (name == "circle") return case_circle();
  if (name == "ellipse") return case_ellipse();
  if (name == "xcircles") return case_intersecting_circles();
  if (name == "square") return case_square();
  if (name == "multi") return case_multi_circle(multi_layout);
  if (name == "plane") return case_plane();
  throw ConfigError("unknown case: " + name +
                    " (expected circle|ellipse|xcircles|square|multi|plane)");
}

} // namespace redist

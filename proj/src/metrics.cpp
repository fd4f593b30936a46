#include "redist/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace redist {

std::vector<uint8_t> band_elements(const Matrix& exact, double band_eps) {
  std::vector<uint8_t> in_band(static_cast<std::size_t>(exact.cols()), 0);
  for (Eigen::Index e = 0; e < exact.cols(); ++e)
    in_band[static_cast<std::size_t>(e)] = exact.col(e).cwiseAbs().minCoeff() <= band_eps ? 1 : 0;
  return in_band;
}

void banded_norms(const Discretization& d, const Matrix& phi, const Matrix& exact,
                  double band_eps, double& l2, double& linf, double* l2_raw) {
  require(band_eps > 0.0, "banded_norms: band thickness must be positive");
  const auto in_band = band_elements(exact, band_eps);

  double sum = 0.0;
  linf = 0.0;
  bool any = false;
  for (int e = 0; e < d.num_elements(); ++e) {
    if (!in_band[static_cast<std::size_t>(e)]) continue;
    any = true;
    const Vector err = phi.col(e) - exact.col(e);
    sum += d.geom.jac(e) * err.dot(d.re.mass * err);
    linf = std::max(linf, err.cwiseAbs().maxCoeff());
  }
  require(any, "banded_norms: empty band");
  if (l2_raw) *l2_raw = sum;
  l2 = std::sqrt(std::max(0.0, sum));
}

void nodal_banded_norms(const Discretization& d, const Matrix& phi, const Matrix& exact,
                        double band_eps, double& l2, double& linf) {
  // nodal mass weights: lumped row sums of the elemental mass matrix
  const Vector lumped = d.re.mass.rowwise().sum();
  double sum = 0.0;
  linf = 0.0;
  bool any = false;
  for (int e = 0; e < d.num_elements(); ++e) {
    for (int n = 0; n < d.re.np; ++n) {
      if (std::abs(exact(n, e)) > band_eps) continue;
      any = true;
      const double err = phi(n, e) - exact(n, e);
      sum += d.geom.jac(e) * lumped(n) * err * err;
      linf = std::max(linf, std::abs(err));
    }
  }
  require(any, "nodal_banded_norms: empty band");
  l2 = std::sqrt(std::max(0.0, sum));
}

double smoothed_heaviside(double phi, double h) {
  return 0.5 * (1.0 + std::tanh(std::numbers::pi * phi / h));
}

double interface_l1(const Discretization& d, const Matrix& phi, const Matrix& exact,
                    double h_char, double interface_length, const std::vector<uint8_t>& active,
                    bool abs_variant) {
  require(h_char > 0.0, "interface_l1: characteristic length must be positive");
  require(interface_length > 0.0, "interface_l1: interface length must be positive");

  double integral = 0.0;
  Vector w(d.re.np);
  for (int e = 0; e < d.num_elements(); ++e) {
    if (!active.empty() && !active[static_cast<std::size_t>(e)]) continue;
    for (int n = 0; n < d.re.np; ++n) {
      const double diff = smoothed_heaviside(phi(n, e), h_char) -
                          smoothed_heaviside(exact(n, e), h_char);
      w(n) = abs_variant ? std::abs(diff) : diff;
    }
    integral += d.geom.jac(e) * (d.re.mass * w).sum();
  }
  return integral / interface_length;
}

std::vector<std::optional<double>> observed_order(const std::vector<double>& errors,
                                                  const std::vector<double>& h) {
  require(errors.size() == h.size() && errors.size() >= 2,
          "observed_order: need matching error/size sequences of length >= 2");
  for (std::size_t i = 0; i + 1 < h.size(); ++i)
    require(h[i] > h[i + 1], "observed_order: h must be strictly decreasing");

  std::vector<std::optional<double>> orders;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    if (errors[i] <= 0.0 || errors[i + 1] <= 0.0) {
      orders.push_back(std::nullopt);
      continue;
    }
    orders.push_back(std::log(errors[i] / errors[i + 1]) / std::log(h[i] / h[i + 1]));
  }
  return orders;
}

double eikonal_residual_median(const Discretization& d, const Matrix& phi, const Matrix& exact,
                               double band_eps) {
  const GradientPair gp = ldg_gradients(d, phi);
  const auto in_band = band_elements(exact, band_eps);
  std::vector<double> res;
  for (int e = 0; e < d.num_elements(); ++e) {
    if (!in_band[static_cast<std::size_t>(e)]) continue;
    for (int n = 0; n < d.re.np; ++n) {
      const double gx = 0.5 * (gp.px(n, e) + gp.qx(n, e));
      const double gy = 0.5 * (gp.py(n, e) + gp.qy(n, e));
      res.push_back(std::abs(std::hypot(gx, gy) - 1.0));
    }
  }
  require(!res.empty(), "eikonal_residual_median: empty band");
  std::nth_element(res.begin(), res.begin() + static_cast<std::ptrdiff_t>(res.size() / 2),
                   res.end());
  return res[res.size() / 2];
}

} // namespace redist

#pragma once

#include "redist/discretization.hpp"

#include <optional>
#include <vector>

namespace redist {

struct ErrorReport {
  double l2 = 0.0;
  double l2_raw = 0.0; // summed inner products without the square root
  double linf = 0.0;
  double l1_interface = 0.0; // signed Heaviside mismatch integral / L_Gamma
  double l1_interface_abs = 0.0;
  double band_eps = 0.0;
  double h_char = 0.0;
};

/// Band membership at element granularity: min nodal |exact| <= band_eps.
std::vector<uint8_t> band_elements(const Matrix& exact, double band_eps);

/// Banded L2 (mass-matrix inner products, square-rooted) and Linf of
/// phi - exact over the band elements. Throws if the band is empty.
void banded_norms(const Discretization& d, const Matrix& phi, const Matrix& exact,
                  double band_eps, double& l2, double& linf, double* l2_raw = nullptr);

/// Same norms restricted to nodes with |exact| <= band_eps (used by the
/// banded time-history monitor, where element granularity would drag nodes
/// up to a diameter outside the band into the measurement).
void nodal_banded_norms(const Discretization& d, const Matrix& phi, const Matrix& exact,
                        double band_eps, double& l2, double& linf);

double smoothed_heaviside(double phi, double h);

/// Averaged interface-displacement error: integral of H_h(phi) - H_h(exact)
/// over the given elements (all when active is empty), divided by the
/// interface length. Returns the signed integral; abs_variant integrates
/// |H_h(phi) - H_h(exact)| instead.
double interface_l1(const Discretization& d, const Matrix& phi, const Matrix& exact,
                    double h_char, double interface_length,
                    const std::vector<uint8_t>& active = {}, bool abs_variant = false);

/// Pairwise observed orders log(E_k/E_{k+1}) / log(h_k/h_{k+1});
/// empty optional where an error vanishes.
std::vector<std::optional<double>> observed_order(const std::vector<double>& errors,
                                                  const std::vector<double>& h);

/// Median of ||grad phi| - 1| over band-element nodes, gradients from the
/// central LDG approximation.
double eikonal_residual_median(const Discretization& d, const Matrix& phi, const Matrix& exact,
                               double band_eps);

} // namespace redist

#pragma once

#include "redist/ref_element.hpp"
#include "redist/types.hpp"

#include <vector>

namespace redist {

enum class LimiterMode { Auto, AlwaysOn, Off };

LimiterMode parse_limiter_mode(const std::string& name);
std::string to_string(LimiterMode mode);

/// Per-element modal regularity classification for one detection pass.
struct RegularityReport {
  Vector decay_exponent;        // fitted modal decay rate s per element
  std::vector<uint8_t> troubled;
  double threshold = 1.0;
};

/// Modal decay-rate detector. Nodal coefficients are converted to the
/// orthonormal modal basis, modal magnitudes are grouped by total degree
/// (max per degree), skyline-pegged against higher degrees with a floor of
/// 1e-14 * ||field||, and log|c_k| is fitted against log k over k = 1..N.
/// Elements whose fitted decay rate falls below the threshold are troubled.
/// Fields that carry no energy above degree zero are never troubled.
/// Non-finite nodal values mark the element troubled unconditionally.
///
/// Auto mode requires order >= 3 (the fit needs three points); lower orders
/// fall back to AlwaysOn with a one-time warning.
RegularityReport detect(const Matrix& nodal /* Np x K */, const ReferenceElement& re,
                        LimiterMode mode, double threshold = 1.0);

/// Decay exponent of a single element (the detector's fit; +inf when the
/// field has no modal content above degree zero).
double modal_decay_exponent(const Vector& nodal, const ReferenceElement& re);

} // namespace redist

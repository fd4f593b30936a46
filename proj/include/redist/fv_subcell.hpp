#pragma once

#include "redist/discretization.hpp"

#include <vector>

namespace redist {

/// Dual-representation scalar field: nodal coefficients everywhere, subcell
/// means active on troubled elements.
struct FieldData {
  Matrix nodal; // Np x K
  Matrix means; // Ns x K
};

struct SpatialOptions {
  int fv_order = 2; // 1 = piecewise-constant sub-face traces (and maximal LLF dissipation)
};

/// Per-subcell WENO gradients with the stencil weights kept for inspection.
struct WenoResult {
  Matrix gx, gy;    // Ns x K
  Matrix weights;   // (3*Ns) x K, rows grouped per subcell
};

/// Planar fit through (0,0,0), (dx1,dy1,df1), (dx2,dy2,df2).
/// Returns false when the two offsets are (near-)collinear.
bool plane_fit(double dx1, double dy1, double df1, double dx2, double dy2, double df2,
               double& ax, double& ay);

/// Second-order WENO gradient reconstruction on the subcells of troubled
/// elements. Stencil slots across macro faces use the neighbor's face
/// sub-edge means (DG side) or its boundary subcell means (FV side); domain
/// boundaries use the element's own reconstructed trace.
void weno_gradients(const Discretization& d, const FieldData& f,
                    const std::vector<uint8_t>& troubled, const SpatialOptions& opt,
                    WenoResult& out);

/// Alternating upwind flux values per component for one face, given both
/// side traces in a common orientation (a upstream of n).
void upwind_fluxes(const Vector& a, const Vector& b, double nx, double ny, Vector& px,
                   Vector& py, Vector& qx, Vector& qy);

struct RhsWorkspace {
  Matrix fpx, fpy, fqx, fqy;     // nseg x nfaces, owner orientation
  std::vector<uint8_t> face_fv;  // face carries sub-edge resolution data
  WenoResult weno;
  Matrix trace;                  // (3*Ns) x K extrapolated sub-face traces
  Matrix dr_f, ds_f;             // volume-derivative scratch
  bool warned_singular = false;
};

/// Semi-discrete right-hand side d(phi)/dt = -H(p, q) for one scalar field:
/// LDG on smooth elements, the degenerate subcell FV scheme on troubled ones,
/// conservative flux coupling across mixed faces, frozen elements zeroed.
void compute_rhs(const Discretization& d, const FieldData& f,
                 const std::vector<uint8_t>& troubled, const std::vector<uint8_t>& frozen,
                 const SpatialOptions& opt, Matrix& dnodal, Matrix& dmeans, RhsWorkspace& ws);

/// Means of a nodal field / nodal reconstruction of means for one element.
/// promote(demote(x)) = x for degree <= N data; both preserve the macro mean.
Vector demote_column(const Discretization& d, const Matrix& nodal, int e);
Vector promote_column(const Discretization& d, const Matrix& means, int e);

} // namespace redist

#pragma once

#include "redist/detector.hpp"
#include "redist/mesh.hpp"
#include "redist/ref_element.hpp"
#include "redist/subcell.hpp"
#include "redist/types.hpp"

#include <functional>
#include <vector>

namespace redist {

struct MacroFace {
  int ea = -1, fa = -1; // owner side
  int eb = -1, fb = -1; // neighbor side (== owner on boundary)
  bool boundary = false;
};

/// Physical subcell geometry of one element (affine image of the reference
/// sub-tessellation).
struct SubcellGeometry {
  Vector areas;       // Ns
  Matrix centroids;   // Ns x 2
  Vector face_len;    // per sub-face
  Matrix face_normal; // nsubfaces x 2, outward from cell_a
  Matrix face_mid;    // nsubfaces x 2
};

/// Mesh + reference operators + face connectivity, shared read-only by the
/// spatial kernels.
class Discretization {
public:
  Discretization(Mesh mesh, int order);

  Mesh mesh;
  ReferenceElement re;
  SubcellGrid sg;
  GeometricFactors geom;

  std::vector<MacroFace> faces;
  IMatrix face_id;   // K x 3
  IMatrix face_side; // K x 3: 0 = owner, 1 = neighbor

  Matrix node_x, node_y; // Np x K physical node coordinates

  std::vector<SubcellGeometry> subgeom; // per element

  int num_elements() const { return mesh.num_elements(); }
  int order() const { return re.order; }

  /// Nodal samples of an analytic function.
  Matrix sample(const std::function<double(double, double)>& f) const;
};

/// Left/right-biased LDG gradient approximations (alternating upwind traces,
/// zero-jump exterior state on the domain boundary).
struct GradientPair {
  Matrix px, py; // Np x K
  Matrix qx, qy;
};

GradientPair ldg_gradients(const Discretization& d, const Matrix& field);

/// Local Lax-Friedrichs Hamiltonian |avg| - (a1/2)(qx-px) - (a2/2)(qy-py)
/// with the dissipation bound taken over each column (element).
Matrix llf_hamiltonian(const GradientPair& gp);

/// Single-element version; alpha is maximized over the given entries.
Vector llf_hamiltonian_column(const Vector& px, const Vector& py, const Vector& qx,
                              const Vector& qy);

/// Dissipation bounds a_i = max |g_i|/|g| over the averaged gradient entries,
/// with unit fallback where the gradient vanishes.
void llf_alpha(const Vector& px, const Vector& py, const Vector& qx, const Vector& qy,
               double& a1, double& a2);

} // namespace redist

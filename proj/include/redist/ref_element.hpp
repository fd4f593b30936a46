#pragma once

#include "redist/types.hpp"

#include <array>
#include <vector>

namespace redist {

/// Warp & Blend interpolation nodes on the bi-unit triangle
/// {(r,s): r,s >= -1, r+s <= 0}, vertices (-1,-1), (1,-1), (-1,1).
/// lattice_i/lattice_j give each node's position in the equidistant
/// barycentric lattice (i along r, j along s, i+j <= order).
struct NodeSet {
  Vector r, s;
  std::vector<int> lattice_i, lattice_j;
};

NodeSet warp_blend_nodes(int order);

/// Structured triangulation of the order-M lattice into M^2 triangles,
/// returned as lattice-index triplets (CCW). Used for the subcell
/// tessellation and for linearized plotting output.
std::vector<std::array<int, 3>> lattice_triangulation(int order);

/// Index of lattice node (i,j) in the node enumeration of warp_blend_nodes.
int lattice_node_index(int order, int i, int j);

/// Nodal basis and dense operators on the bi-unit triangle.
struct ReferenceElement {
  int order = 0;
  int np = 0;  // (N+1)(N+2)/2
  int nfp = 0; // N+1

  Vector r, s;
  Matrix v, vinv;    // generalized Vandermonde (orthonormal modal basis)
  Matrix mass;       // (V V^T)^{-1}
  Matrix dr, ds;     // nodal derivative operators
  std::array<Matrix, 3> lift;              // Np x Nfp per face
  std::array<std::vector<int>, 3> face_nodes; // ordered along v_f -> v_{f+1}
  Vector face_xi;                           // 1D face node coordinates (Gauss-Lobatto)
  std::vector<int> mode_degree_i, mode_degree_j; // modal total-degree bookkeeping
  std::vector<int> lattice_i, lattice_j;

  Vector nodal_to_modal(const Vector& nodal) const;
  Vector modal_to_nodal(const Vector& modal) const;
};

ReferenceElement build_reference_element(int order);

/// Orthonormal modal (Koornwinder-Dubiner) Vandermonde at arbitrary points.
Matrix vandermonde_2d(int order, const Vector& r, const Vector& s);
void grad_vandermonde_2d(int order, const Vector& r, const Vector& s, Matrix& vr, Matrix& vs);

/// Interpolation matrix from the element nodes to arbitrary points.
Matrix interpolation_matrix(const ReferenceElement& re, const Vector& r, const Vector& s);

} // namespace redist

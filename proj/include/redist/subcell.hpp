#pragma once

#include "redist/ref_element.hpp"
#include "redist/types.hpp"

#include <array>
#include <vector>

namespace redist {

/// One edge of the sub-tessellation on the reference element. Interior
/// sub-faces join two subcells of the same macro element; boundary sub-faces
/// lie on a macro face and carry the (face, segment) coordinates of the face
/// sub-edge they tile.
struct SubFace {
  int cell_a = -1;
  int cell_b = -1;     // -1 when the edge lies on a macro face
  int macro_face = -1; // valid when cell_b == -1
  int segment = -1;    // sub-edge index along the macro face (owner CCW order)
  double ar = 0, as = 0, br = 0, bs = 0; // reference endpoints, CCW for cell_a
};

/// (N+1)^2 subcell tessellation of the reference triangle over the
/// order-(N+1) Warp & Blend lattice, with the mean-value projection /
/// reconstruction operator pairs.
struct SubcellGrid {
  int order = 0; // macro polynomial order N
  int ns = 0;    // (N+1)^2 subcells
  int nseg = 0;  // N+1 sub-edges per macro face

  std::vector<std::array<int, 3>> cells; // vertex indices into lattice nodes
  Vector lattice_r, lattice_s;           // order-(N+1) node coordinates

  Vector areas;     // reference subcell areas, sum = 2
  Matrix centroids; // Ns x 2

  Matrix p;  // Ns x Np nodal -> subcell means
  Matrix r;  // Np x Ns constrained least-squares reconstruction, R P = I
  Matrix pf; // (N+1) x (N+1) face-node trace -> face sub-edge means
  Matrix rf; // inverse of pf

  Vector face_breaks; // N+2 sub-edge break points in the face parameter

  std::vector<SubFace> sub_faces;
  std::vector<std::array<std::array<int, 2>, 3>> cell_faces; // per cell: {subface id, side}
  std::array<std::vector<int>, 3> face_segment_cell;    // [face][segment] -> boundary subcell
  std::array<std::vector<int>, 3> face_segment_subface; // [face][segment] -> sub-face id
};

SubcellGrid build_subcell_grid(const ReferenceElement& re);

/// Subcell means of a nodal field (P phi) and the reconstruction back
/// (R means). promote(demote(x)) = x for polynomial data of degree <= N and
/// both directions preserve the macro element mean.
Vector demote_element(const SubcellGrid& sg, const Vector& nodal);
Vector promote_element(const SubcellGrid& sg, const Vector& means);

} // namespace redist

#pragma once

#include "redist/types.hpp"

#include <array>
#include <string>
#include <vector>

namespace redist {

/// Conforming triangulation with face adjacency. Elements are stored
/// counterclockwise; EToE/EToF point to the neighbor element and its local
/// face across each face, with boundary faces referencing the element itself.
struct Mesh {
  Matrix vertices;  // NV x 2
  IMatrix elements; // K x 3, CCW
  IMatrix etoe;     // K x 3 neighbor element (self on boundary)
  IMatrix etof;     // K x 3 neighbor local face
  std::vector<std::array<bool, 3>> boundary_face;

  int num_vertices() const { return static_cast<int>(vertices.rows()); }
  int num_elements() const { return static_cast<int>(elements.rows()); }

  double signed_area(int e) const;
  /// Longest edge of element e.
  double diameter(int e) const;
  double inradius(int e) const;
};

/// Per-element affine map factors and per-face surface data. For straight
/// triangles all quantities are constant per element/face. jf is the ratio of
/// the physical face length to the reference parameter interval (length 2).
struct GeometricFactors {
  Vector rx, ry, sx, sy; // K
  Vector jac;            // K, > 0
  Matrix nx, ny, jf;     // K x 3
};

/// Structured triangulation of [-L,L]^2 from square cells of size ~target_edge.
/// Cells split along alternating diagonals; cells on the two domain diagonals
/// are split into four triangles about their center, which reproduces the
/// element counts of the reference unstructured grids (240 at L=2, h=0.4).
Mesh generate_square_mesh(double half_extent, double target_edge);

/// Split every triangle into 4 congruent children via edge midpoints.
Mesh refine_uniform(const Mesh& mesh);

/// Fill EToE/EToF and boundary flags. Throws on non-manifold edges.
void build_connectivity(Mesh& mesh);

GeometricFactors compute_geometry(const Mesh& mesh);

/// Minimal ASCII format: "NV NE", NV lines "x y", NE lines "v0 v1 v2".
Mesh read_native_mesh(const std::string& path);
void write_native_mesh(const Mesh& mesh, const std::string& path);

/// Gmsh ASCII v2.2 import; only first-order triangles are kept, all other
/// element types are skipped with a warning on stderr.
Mesh read_gmsh_mesh(const std::string& path);

/// Dispatch by extension: .msh -> Gmsh, anything else -> native.
Mesh load_mesh(const std::string& path);

} // namespace redist

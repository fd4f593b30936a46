#pragma once

#include "redist/discretization.hpp"

#include <map>
#include <string>
#include <vector>

namespace redist {

/// Legacy-VTK ASCII unstructured grid: element node clouds linearized into
/// the order-N lattice triangles, with per-node scalar arrays. "troubled"
/// replicates the element flag to its nodes.
void write_vtk_fields(const std::string& path, const Discretization& d, const Matrix& phi,
                      const Matrix& phi0, const Matrix& exact,
                      const std::vector<uint8_t>& troubled);

/// Raw nodal table: x,y,phi,phi0,exact,error,troubled.
void write_csv_fields(const std::string& path, const Discretization& d, const Matrix& phi,
                      const Matrix& phi0, const Matrix& exact,
                      const std::vector<uint8_t>& troubled);

/// ASCII matrix dump: one block per matrix, "name rows cols" header line and
/// row-major entries.
void dump_matrix(std::ostream& os, const std::string& name, const Matrix& m);
void dump_operators(const std::string& path, const Discretization& d);

/// Flat key=value file (used for run configuration; '#' comments allowed).
std::map<std::string, std::string> read_key_value_file(const std::string& path);

} // namespace redist

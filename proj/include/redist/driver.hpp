#pragma once

#include "redist/arrival.hpp"
#include "redist/cases.hpp"
#include "redist/metrics.hpp"
#include "redist/time_integrator.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace redist {

struct RunConfig {
  std::string case_name = "circle";
  int order = 3;
  int levels = 1;
  double cfl = 1.0;
  double band_eps = std::numeric_limits<double>::infinity();
  double final_time = 0.0; // 0: auto (1.25 * band + coarsest diameter)
  LimiterMode limiter = LimiterMode::Auto;
  int fv_order = 2;
  bool freeze_band = false; // opt-in spatial freezing outside the band
  std::string mesh_path;    // empty: generated square mesh
  std::string out_dir;      // empty: no field/table files
  double target_edge = 0.4;
  bool verbose = false;
  bool keep_fields = false; // retain nodal data in the result
  std::vector<CircleSpec> multi_layout;

  void validate() const;
};

/// Merge key=value entries (file config; CLI flags override separately).
void apply_key_values(RunConfig& cfg, const std::map<std::string, std::string>& kv);
std::vector<CircleSpec> parse_circle_list(const std::string& text);

struct RunResult {
  int level = 0;
  int elements = 0;
  double h_char = 0.0;
  double dt = 0.0;
  int steps = 0;
  ErrorReport errors;
  double runtime_seconds = 0.0;
  double final_troubled_fraction = 0.0;
  int max_troubled_count = 0;

  // retained when keep_fields is set
  std::shared_ptr<Discretization> disc;
  Matrix phi, phi0, exact;
  std::vector<uint8_t> troubled;
  std::vector<uint8_t> frozen;
};

/// Mesh for a refinement level of the configured source.
Mesh build_level_mesh(const RunConfig& cfg, int level);

/// Effective final time for a mesh (auto rule unless configured explicitly).
double effective_final_time(const RunConfig& cfg, const Mesh& mesh);

RunResult run_single(const RunConfig& cfg, int level = 0);

/// run_single per level plus observed-order columns; writes
/// <out_dir>/<case>_N<order>.csv when an output directory is set.
std::vector<RunResult> run_convergence(const RunConfig& cfg);

std::string csv_header();
std::string csv_row(const RunConfig& cfg, const RunResult& r);

} // namespace redist

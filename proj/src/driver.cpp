#include "redist/driver.hpp"

#include "redist/io.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace redist {

void RunConfig::validate() const {
  require(order >= 1 && order <= 7, "config: order must be in [1, 7]");
  require(levels >= 1, "config: levels must be >= 1");
  require(cfl > 0.0, "config: cfl must be positive");
  require(band_eps > 0.0, "config: band must be positive");
  require(final_time >= 0.0, "config: final time must be positive or auto");
  require(fv_order == 1 || fv_order == 2, "config: fv order must be 1 or 2");
  require(target_edge > 0.0, "config: edge length must be positive");
}

std::vector<CircleSpec> parse_circle_list(const std::string& text) {
  std::vector<CircleSpec> circles;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    std::istringstream is(item);
    CircleSpec c{};
    if (is >> c.x >> c.y >> c.r) circles.push_back(c);
  }
  return circles;
}

void apply_key_values(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
  auto get = [&](const char* key) -> const std::string* {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  if (auto* v = get("case")) cfg.case_name = *v;
  if (auto* v = get("order")) cfg.order = std::stoi(*v);
  if (auto* v = get("levels")) cfg.levels = std::stoi(*v);
  if (auto* v = get("cfl")) cfg.cfl = std::stod(*v);
  if (auto* v = get("band")) cfg.band_eps = *v == "inf" ? std::numeric_limits<double>::infinity()
                                                        : std::stod(*v);
  if (auto* v = get("final_time")) {
    if (*v == "auto") {
      cfg.final_time = 0.0;
    } else {
      cfg.final_time = std::stod(*v);
      require(cfg.final_time > 0.0, "config: final_time must be positive (or 'auto')");
    }
  }
  if (auto* v = get("limiter")) cfg.limiter = parse_limiter_mode(*v);
  if (auto* v = get("fv_order")) cfg.fv_order = std::stoi(*v);
  if (auto* v = get("freeze_band")) cfg.freeze_band = *v == "1" || *v == "true";
  if (auto* v = get("mesh")) cfg.mesh_path = *v;
  if (auto* v = get("out")) cfg.out_dir = *v;
  if (auto* v = get("edge")) cfg.target_edge = std::stod(*v);
  if (auto* v = get("verbose")) cfg.verbose = *v == "1" || *v == "true";
  if (auto* v = get("multi_circles")) cfg.multi_layout = parse_circle_list(*v);
}

Mesh build_level_mesh(const RunConfig& cfg, int level) {
  TestCase tc = make_case(cfg.case_name, cfg.multi_layout);
  Mesh mesh = cfg.mesh_path.empty()
                  ? generate_square_mesh(tc.half_extent, cfg.target_edge)
                  : load_mesh(cfg.mesh_path);
  for (int l = 0; l < level; ++l) mesh = refine_uniform(mesh);
  return mesh;
}

namespace {

double max_diameter(const Mesh& mesh) {
  double d = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e) d = std::max(d, mesh.diameter(e));
  return d;
}

double char_length(const RunConfig& cfg, const Mesh& mesh, int level) {
  if (cfg.mesh_path.empty()) return cfg.target_edge / std::pow(2.0, level);
  double mean = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e) mean += mesh.diameter(e);
  return mean / mesh.num_elements();
}

} // namespace

double effective_final_time(const RunConfig& cfg, const Mesh& mesh) {
  if (cfg.final_time > 0.0) return cfg.final_time;
  TestCase tc = make_case(cfg.case_name, cfg.multi_layout);
  if (std::isfinite(cfg.band_eps))
    // cover the band elements: nodes sit up to one diameter outside the band
    return 1.25 * cfg.band_eps + max_diameter(mesh);
  const double half_diag = tc.half_extent * std::numbers::sqrt2;
  return 1.25 * half_diag;
}

RunResult run_single(const RunConfig& cfg, int level) {
  cfg.validate();
  TestCase tc = make_case(cfg.case_name, cfg.multi_layout);

  RunResult res;
  res.level = level;

  Mesh mesh = build_level_mesh(cfg, level);
  auto disc = std::make_shared<Discretization>(std::move(mesh), cfg.order);
  res.elements = disc->num_elements();
  res.h_char = char_length(cfg, disc->mesh, level);

  const Matrix phi0 = disc->sample(tc.phi0);
  const Matrix exact = disc->sample(tc.exact);

  AdvanceConfig acfg;
  acfg.final_time = effective_final_time(cfg, disc->mesh);
  acfg.cfl = cfg.cfl;
  acfg.limiter = cfg.limiter;
  acfg.fv_order = cfg.fv_order;
  acfg.freeze_band = cfg.freeze_band;
  acfg.band_eps = cfg.band_eps;
  acfg.verbose = cfg.verbose;

  const auto t0 = std::chrono::steady_clock::now();
  AdvanceResult adv = advance(*disc, phi0, acfg);
  ArrivalResult arr = reconstruct_distance(adv.history, phi0, acfg.final_time);

  ErrorReport& er = res.errors;
  er.band_eps = cfg.band_eps;
  er.h_char = res.h_char;
  const double err_band = std::isfinite(cfg.band_eps)
                              ? cfg.band_eps
                              : std::numeric_limits<double>::max();
  banded_norms(*disc, arr.phi, exact, err_band, er.l2, er.linf, &er.l2_raw);

  std::vector<uint8_t> active;
  if (cfg.freeze_band) {
    active.resize(adv.state.frozen.size());
    for (std::size_t i = 0; i < active.size(); ++i) active[i] = adv.state.frozen[i] ? 0 : 1;
  }
  er.l1_interface =
      interface_l1(*disc, arr.phi, exact, res.h_char, tc.interface_length, active, false);
  er.l1_interface_abs =
      interface_l1(*disc, arr.phi, exact, res.h_char, tc.interface_length, active, true);
  const auto t1 = std::chrono::steady_clock::now();

  res.runtime_seconds = std::chrono::duration<double>(t1 - t0).count();
  res.dt = adv.dt;
  res.steps = adv.steps;
  res.final_troubled_fraction = adv.final_troubled_fraction;
  res.max_troubled_count = adv.max_troubled_count;

  if (!cfg.out_dir.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    const std::string stem = cfg.out_dir + "/" + cfg.case_name + "_N" +
                             std::to_string(cfg.order) + "_L" + std::to_string(level);
    write_vtk_fields(stem + ".vtk", *disc, arr.phi, phi0, exact, adv.state.troubled);
    write_csv_fields(stem + "_nodes.csv", *disc, arr.phi, phi0, exact, adv.state.troubled);
  }

  if (cfg.keep_fields) {
    res.disc = disc;
    res.phi = arr.phi;
    res.phi0 = phi0;
    res.exact = exact;
    res.troubled = adv.state.troubled;
    res.frozen = adv.state.frozen;
  }
  return res;
}

std::string csv_header() {
  return "case,N,level,h,K,band_eps,cfl,final_time,limiter,fv_order,"
         "l2,linf,l1,l1_abs,runtime_s,l2_order,linf_order,l1_order";
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

} // namespace

std::string csv_row(const RunConfig& cfg, const RunResult& r) {
  std::ostringstream os;
  os << cfg.case_name << "," << cfg.order << "," << r.level << "," << fmt(r.h_char) << ","
     << r.elements << "," << fmt(cfg.band_eps) << "," << fmt(cfg.cfl) << ","
     << fmt(cfg.final_time) << "," << to_string(cfg.limiter) << "," << cfg.fv_order << ","
     << fmt(r.errors.l2) << "," << fmt(r.errors.linf) << "," << fmt(r.errors.l1_interface) << ","
     << fmt(r.errors.l1_interface_abs) << "," << fmt(r.runtime_seconds);
  return os.str();
}

std::vector<RunResult> run_convergence(const RunConfig& cfg) {
  cfg.validate();
  std::vector<RunResult> results;
  for (int level = 0; level < cfg.levels; ++level) {
    RunResult r = run_single(cfg, level);
    std::cout << cfg.case_name << " N=" << cfg.order << " level=" << level << " K=" << r.elements
              << " l2=" << r.errors.l2 << " linf=" << r.errors.linf
              << " l1=" << r.errors.l1_interface_abs << " (" << r.runtime_seconds << " s)\n";
    results.push_back(std::move(r));
  }

  std::vector<double> h, e2, einf, e1;
  for (const auto& r : results) {
    h.push_back(r.h_char);
    e2.push_back(r.errors.l2);
    einf.push_back(r.errors.linf);
    e1.push_back(r.errors.l1_interface_abs);
  }
  auto fmt_order = [](const std::optional<double>& o) {
    return o ? fmt(*o) : std::string("n/a");
  };
  std::vector<std::string> rows;
  for (std::size_t i = 0; i < results.size(); ++i) {
    std::string row = csv_row(cfg, results[i]);
    if (i == 0) {
      row += ",,,";
    } else {
      const auto o2 = observed_order({e2[i - 1], e2[i]}, {h[i - 1], h[i]});
      const auto oi = observed_order({einf[i - 1], einf[i]}, {h[i - 1], h[i]});
      const auto o1 = observed_order({e1[i - 1], e1[i]}, {h[i - 1], h[i]});
      row += "," + fmt_order(o2[0]) + "," + fmt_order(oi[0]) + "," + fmt_order(o1[0]);
      std::cout << "  order(l2)=" << fmt_order(o2[0]) << " order(linf)=" << fmt_order(oi[0])
                << " order(l1)=" << fmt_order(o1[0]) << "\n";
    }
    rows.push_back(row);
  }

  if (!cfg.out_dir.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    const std::string path =
        cfg.out_dir + "/" + cfg.case_name + "_N" + std::to_string(cfg.order) + ".csv";
    std::ofstream out(path);
    require(out.good(), "cannot write table: " + path);
    out << csv_header() << "\n";
    for (const auto& row : rows) out << row << "\n";
  }
  return results;
}

} // namespace redist

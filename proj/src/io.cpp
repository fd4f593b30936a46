#include "redist/io.hpp"

#include <fstream>
#include <sstream>

namespace redist {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  require(out.good(), "cannot open output file: " + path);
  out.precision(17);
  return out;
}

} // namespace

void write_vtk_fields(const std::string& path, const Discretization& d, const Matrix& phi,
                      const Matrix& phi0, const Matrix& exact,
                      const std::vector<uint8_t>& troubled) {
  auto out = open_out(path);
  const int k = d.num_elements();
  const int np = d.re.np;
  const auto tris = lattice_triangulation(d.re.order);
  const int ncells = k * static_cast<int>(tris.size());

  out << "# vtk DataFile Version 3.0\n";
  out << "level set reinitialization fields\n";
  out << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << k * np << " double\n";
  for (int e = 0; e < k; ++e)
    for (int n = 0; n < np; ++n) out << d.node_x(n, e) << " " << d.node_y(n, e) << " 0\n";

  out << "CELLS " << ncells << " " << 4 * ncells << "\n";
  for (int e = 0; e < k; ++e)
    for (const auto& t : tris)
      out << "3 " << e * np + t[0] << " " << e * np + t[1] << " " << e * np + t[2] << "\n";
  out << "CELL_TYPES " << ncells << "\n";
  for (int c = 0; c < ncells; ++c) out << "5\n";

  out << "POINT_DATA " << k * np << "\n";
  auto scalar = [&](const std::string& name, auto&& get) {
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (int e = 0; e < k; ++e)
      for (int n = 0; n < np; ++n) out << get(n, e) << "\n";
  };
  scalar("phi", [&](int n, int e) { return phi(n, e); });
  scalar("phi0", [&](int n, int e) { return phi0(n, e); });
  scalar("exact", [&](int n, int e) { return exact(n, e); });
  scalar("error", [&](int n, int e) { return phi(n, e) - exact(n, e); });
  scalar("troubled", [&](int, int e) {
    return static_cast<double>(troubled.empty() ? 0 : troubled[static_cast<std::size_t>(e)]);
  });
}

void write_csv_fields(const std::string& path, const Discretization& d, const Matrix& phi,
                      const Matrix& phi0, const Matrix& exact,
                      const std::vector<uint8_t>& troubled) {
  auto out = open_out(path);
  out << "x,y,phi,phi0,exact,error,troubled\n";
  for (int e = 0; e < d.num_elements(); ++e)
    for (int n = 0; n < d.re.np; ++n)
      out << d.node_x(n, e) << "," << d.node_y(n, e) << "," << phi(n, e) << "," << phi0(n, e)
          << "," << exact(n, e) << "," << phi(n, e) - exact(n, e) << ","
          << static_cast<int>(troubled.empty() ? 0 : troubled[static_cast<std::size_t>(e)])
          << "\n";
}

void dump_matrix(std::ostream& os, const std::string& name, const Matrix& m) {
  os << name << " " << m.rows() << " " << m.cols() << "\n";
  os.precision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << m(i, j) << (j + 1 < m.cols() ? " " : "");
    os << "\n";
  }
}

void dump_operators(const std::string& path, const Discretization& d) {
  auto out = open_out(path);
  dump_matrix(out, "V", d.re.v);
  dump_matrix(out, "M", d.re.mass);
  dump_matrix(out, "Dr", d.re.dr);
  dump_matrix(out, "Ds", d.re.ds);
  for (int f = 0; f < 3; ++f)
    dump_matrix(out, "L" + std::to_string(f), d.re.lift[static_cast<std::size_t>(f)]);
  dump_matrix(out, "P", d.sg.p);
  dump_matrix(out, "R", d.sg.r);
  dump_matrix(out, "Pf", d.sg.pf);
  dump_matrix(out, "Rf", d.sg.rf);
}

std::map<std::string, std::string> read_key_value_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (!key.empty()) kv[key] = val;
  }
  return kv;
}

} // namespace redist

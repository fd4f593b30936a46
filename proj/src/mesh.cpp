#include "redist/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace redist {

double Mesh::signed_area(int e) const {
  const auto v0 = vertices.row(elements(e, 0));
  const auto v1 = vertices.row(elements(e, 1));
  const auto v2 = vertices.row(elements(e, 2));
  return 0.5 * ((v1(0) - v0(0)) * (v2(1) - v0(1)) - (v2(0) - v0(0)) * (v1(1) - v0(1)));
}

double Mesh::diameter(int e) const {
  double d = 0.0;
  for (int f = 0; f < 3; ++f) {
    const auto a = vertices.row(elements(e, f));
    const auto b = vertices.row(elements(e, (f + 1) % 3));
    d = std::max(d, (b - a).norm());
  }
  return d;
}

double Mesh::inradius(int e) const {
  double per = 0.0;
  for (int f = 0; f < 3; ++f) {
    const auto a = vertices.row(elements(e, f));
    const auto b = vertices.row(elements(e, (f + 1) % 3));
    per += (b - a).norm();
  }
  return 2.0 * signed_area(e) / per;
}

namespace {

void fix_orientation(Mesh& mesh) {
  for (int e = 0; e < mesh.num_elements(); ++e) {
    if (mesh.signed_area(e) < 0.0) std::swap(mesh.elements(e, 1), mesh.elements(e, 2));
    require(mesh.signed_area(e) > 0.0, "mesh: element " + std::to_string(e) + " has zero area");
  }
}

} // namespace

Mesh generate_square_mesh(double half_extent, double target_edge) {
  require(half_extent > 0.0, "generate_square_mesh: half extent must be positive");
  require(target_edge > 0.0 && target_edge <= 2.0 * half_extent,
          "generate_square_mesh: edge length must satisfy 0 < h <= 2L");

  const int n = std::max(1, static_cast<int>(std::lround(2.0 * half_extent / target_edge)));
  const double h = 2.0 * half_extent / n;

  Mesh mesh;
  std::vector<std::array<double, 2>> verts;
  verts.reserve(static_cast<std::size_t>((n + 1) * (n + 1)));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      verts.push_back({-half_extent + i * h, -half_extent + j * h});

  auto vid = [n](int i, int j) { return j * (n + 1) + i; };

  std::vector<std::array<int, 3>> tris;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
      const bool on_diagonal = n > 1 && (i == j || i + j == n - 1);
      if (on_diagonal) {
        // 4-way split about the cell center
        const int m = static_cast<int>(verts.size());
        verts.push_back({-half_extent + (i + 0.5) * h, -half_extent + (j + 0.5) * h});
        tris.push_back({a, b, m});
        tris.push_back({b, c, m});
        tris.push_back({c, d, m});
        tris.push_back({d, a, m});
      } else if ((i + j) % 2 == 0) {
        tris.push_back({a, b, c});
        tris.push_back({a, c, d});
      } else {
        tris.push_back({a, b, d});
        tris.push_back({b, c, d});
      }
    }
  }

  mesh.vertices.resize(static_cast<int>(verts.size()), 2);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    mesh.vertices(static_cast<int>(i), 0) = verts[i][0];
    mesh.vertices(static_cast<int>(i), 1) = verts[i][1];
  }
  mesh.elements.resize(static_cast<int>(tris.size()), 3);
  for (std::size_t t = 0; t < tris.size(); ++t)
    for (int k = 0; k < 3; ++k) mesh.elements(static_cast<int>(t), k) = tris[t][k];

  fix_orientation(mesh);
  build_connectivity(mesh);
  return mesh;
}

Mesh refine_uniform(const Mesh& mesh) {
  const int nv = mesh.num_vertices();
  const int k = mesh.num_elements();

  Mesh fine;
  std::map<std::pair<int, int>, int> midpoint;
  std::vector<std::array<double, 2>> verts(static_cast<std::size_t>(nv));
  for (int i = 0; i < nv; ++i) verts[static_cast<std::size_t>(i)] = {mesh.vertices(i, 0), mesh.vertices(i, 1)};

  auto mid = [&](int a, int b) {
    const auto key = std::minmax(a, b);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    const int id = static_cast<int>(verts.size());
    verts.push_back({0.5 * (mesh.vertices(a, 0) + mesh.vertices(b, 0)),
                     0.5 * (mesh.vertices(a, 1) + mesh.vertices(b, 1))});
    midpoint.emplace(key, id);
    return id;
  };

  fine.elements.resize(4 * k, 3);
  for (int e = 0; e < k; ++e) {
    const int v0 = mesh.elements(e, 0), v1 = mesh.elements(e, 1), v2 = mesh.elements(e, 2);
    const int m01 = mid(v0, v1), m12 = mid(v1, v2), m20 = mid(v2, v0);
    fine.elements.row(4 * e + 0) << v0, m01, m20;
    fine.elements.row(4 * e + 1) << m01, v1, m12;
    fine.elements.row(4 * e + 2) << m20, m12, v2;
    fine.elements.row(4 * e + 3) << m01, m12, m20;
  }

  fine.vertices.resize(static_cast<int>(verts.size()), 2);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    fine.vertices(static_cast<int>(i), 0) = verts[i][0];
    fine.vertices(static_cast<int>(i), 1) = verts[i][1];
  }

  fix_orientation(fine);
  build_connectivity(fine);
  return fine;
}

void build_connectivity(Mesh& mesh) {
  const int k = mesh.num_elements();
  const int nv = mesh.num_vertices();
  for (int e = 0; e < k; ++e)
    for (int f = 0; f < 3; ++f)
      require(mesh.elements(e, f) >= 0 && mesh.elements(e, f) < nv,
              "build_connectivity: element references invalid vertex");

  mesh.etoe.resize(k, 3);
  mesh.etof.resize(k, 3);
  mesh.boundary_face.assign(static_cast<std::size_t>(k), {false, false, false});

  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> edge_owners;
  for (int e = 0; e < k; ++e) {
    for (int f = 0; f < 3; ++f) {
      const int a = mesh.elements(e, f);
      const int b = mesh.elements(e, (f + 1) % 3);
      edge_owners[std::minmax(a, b)].push_back({e, f});
    }
  }

  for (const auto& [edge, owners] : edge_owners) {
    if (owners.size() > 2)
      throw ConfigError("build_connectivity: non-manifold edge between vertices " +
                        std::to_string(edge.first) + " and " + std::to_string(edge.second));
    if (owners.size() == 1) {
      const auto [e, f] = owners[0];
      mesh.etoe(e, f) = e;
      mesh.etof(e, f) = f;
      mesh.boundary_face[static_cast<std::size_t>(e)][static_cast<std::size_t>(f)] = true;
    } else {
      const auto [e0, f0] = owners[0];
      const auto [e1, f1] = owners[1];
      mesh.etoe(e0, f0) = e1;
      mesh.etof(e0, f0) = f1;
      mesh.etoe(e1, f1) = e0;
      mesh.etof(e1, f1) = f0;
    }
  }
}

GeometricFactors compute_geometry(const Mesh& mesh) {
  const int k = mesh.num_elements();
  GeometricFactors g;
  g.rx.resize(k);
  g.ry.resize(k);
  g.sx.resize(k);
  g.sy.resize(k);
  g.jac.resize(k);
  g.nx.resize(k, 3);
  g.ny.resize(k, 3);
  g.jf.resize(k, 3);

  for (int e = 0; e < k; ++e) {
    const auto v0 = mesh.vertices.row(mesh.elements(e, 0));
    const auto v1 = mesh.vertices.row(mesh.elements(e, 1));
    const auto v2 = mesh.vertices.row(mesh.elements(e, 2));

    const double xr = 0.5 * (v1(0) - v0(0)), yr = 0.5 * (v1(1) - v0(1));
    const double xs = 0.5 * (v2(0) - v0(0)), ys = 0.5 * (v2(1) - v0(1));
    const double jac = xr * ys - xs * yr;
    require(jac > 0.0 || jac < 0.0, "compute_geometry: zero-area element " + std::to_string(e));
    require(jac > 0.0, "compute_geometry: negatively oriented element " + std::to_string(e));

    g.rx(e) = ys / jac;
    g.ry(e) = -xs / jac;
    g.sx(e) = -yr / jac;
    g.sy(e) = xr / jac;
    g.jac(e) = jac;

    for (int f = 0; f < 3; ++f) {
      const auto a = mesh.vertices.row(mesh.elements(e, f));
      const auto b = mesh.vertices.row(mesh.elements(e, (f + 1) % 3));
      const double ex = b(0) - a(0), ey = b(1) - a(1);
      const double len = std::hypot(ex, ey);
      g.nx(e, f) = ey / len;  // outward for CCW elements
      g.ny(e, f) = -ex / len;
      g.jf(e, f) = 0.5 * len; // reference parameter interval has length 2
    }
  }
  return g;
}

Mesh read_native_mesh(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open mesh file: " + path);
  int nv = 0, ne = 0;
  in >> nv >> ne;
  require(in.good() && nv >= 3 && ne >= 1, "malformed mesh header in " + path);

  Mesh mesh;
  mesh.vertices.resize(nv, 2);
  for (int i = 0; i < nv; ++i) in >> mesh.vertices(i, 0) >> mesh.vertices(i, 1);
  mesh.elements.resize(ne, 3);
  for (int e = 0; e < ne; ++e) in >> mesh.elements(e, 0) >> mesh.elements(e, 1) >> mesh.elements(e, 2);
  require(!in.fail(), "truncated mesh file: " + path);

  fix_orientation(mesh);
  build_connectivity(mesh);
  return mesh;
}

void write_native_mesh(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), "cannot write mesh file: " + path);
  out.precision(17);
  out << mesh.num_vertices() << " " << mesh.num_elements() << "\n";
  for (int i = 0; i < mesh.num_vertices(); ++i)
    out << mesh.vertices(i, 0) << " " << mesh.vertices(i, 1) << "\n";
  for (int e = 0; e < mesh.num_elements(); ++e)
    out << mesh.elements(e, 0) << " " << mesh.elements(e, 1) << " " << mesh.elements(e, 2) << "\n";
}

Mesh read_gmsh_mesh(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open mesh file: " + path);

  std::string line;
  std::map<std::int64_t, int> node_ids;
  std::vector<std::array<double, 2>> verts;
  std::vector<std::array<std::int64_t, 3>> tris;
  int skipped = 0;

  while (std::getline(in, line)) {
    if (line.rfind("$MeshFormat", 0) == 0) {
      double version = 0.0;
      in >> version;
      require(version >= 2.0 && version < 3.0, "gmsh: only ASCII v2.x files are supported");
      std::getline(in, line);
    } else if (line.rfind("$Nodes", 0) == 0) {
      std::size_t n = 0;
      in >> n;
      for (std::size_t i = 0; i < n; ++i) {
        std::int64_t id;
        double x, y, z;
        in >> id >> x >> y >> z;
        node_ids[id] = static_cast<int>(verts.size());
        verts.push_back({x, y});
      }
    } else if (line.rfind("$Elements", 0) == 0) {
      std::size_t n = 0;
      in >> n;
      std::getline(in, line);
      for (std::size_t i = 0; i < n; ++i) {
        std::getline(in, line);
        std::istringstream ls(line);
        std::int64_t id;
        int type, ntags;
        ls >> id >> type >> ntags;
        std::int64_t tag;
        for (int t = 0; t < ntags; ++t) ls >> tag;
        if (type == 2) {
          std::array<std::int64_t, 3> tri{};
          ls >> tri[0] >> tri[1] >> tri[2];
          tris.push_back(tri);
        } else {
          ++skipped;
        }
      }
    }
  }
  if (skipped > 0)
    std::cerr << "gmsh: skipped " << skipped << " non-triangle element(s) in " << path << "\n";
  require(!tris.empty(), "gmsh: no first-order triangles found in " + path);

  Mesh mesh;
  mesh.vertices.resize(static_cast<int>(verts.size()), 2);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    mesh.vertices(static_cast<int>(i), 0) = verts[i][0];
    mesh.vertices(static_cast<int>(i), 1) = verts[i][1];
  }
  mesh.elements.resize(static_cast<int>(tris.size()), 3);
  for (std::size_t t = 0; t < tris.size(); ++t)
    for (int k = 0; k < 3; ++k) {
      auto it = node_ids.find(tris[t][static_cast<std::size_t>(k)]);
      require(it != node_ids.end(), "gmsh: element references unknown node");
      mesh.elements(static_cast<int>(t), k) = it->second;
    }

  fix_orientation(mesh);
  build_connectivity(mesh);
  return mesh;
}

Mesh load_mesh(const std::string& path) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".msh") return read_gmsh_mesh(path);
  return read_native_mesh(path);
}

} // namespace redist

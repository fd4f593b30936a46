#include "redist/discretization.hpp"
#include "redist/parallel.hpp"

#include <cmath>

namespace redist {

namespace {
constexpr double kGradFloor = 1e-10;
}

GradientPair ldg_gradients(const Discretization& d, const Matrix& field) {
  const int k = d.num_elements();
  const int np = d.re.np;
  const int nfp = d.re.nfp;

  GradientPair gp;
  gp.px.resize(np, k);
  gp.py.resize(np, k);
  gp.qx.resize(np, k);
  gp.qy.resize(np, k);

  const Matrix dr_f = d.re.dr * field;
  const Matrix ds_f = d.re.ds * field;

  parallel_for_each(static_cast<std::size_t>(k), [&](std::size_t es) {
    const int e = static_cast<int>(es);
    Vector gx = d.geom.rx(e) * dr_f.col(e) + d.geom.sx(e) * ds_f.col(e);
    Vector gy = d.geom.ry(e) * dr_f.col(e) + d.geom.sy(e) * ds_f.col(e);
    gp.px.col(e) = gx;
    gp.py.col(e) = gy;
    gp.qx.col(e) = gx;
    gp.qy.col(e) = gy;

    for (int f = 0; f < 3; ++f) {
      const int nb = d.mesh.etoe(e, f);
      const int fb = d.mesh.etof(e, f);
      if (nb == e) continue; // zero-jump exterior trace on the boundary

      const auto& own = d.re.face_nodes[static_cast<std::size_t>(f)];
      const auto& ext = d.re.face_nodes[static_cast<std::size_t>(fb)];
      Vector jump(nfp);
      for (int i = 0; i < nfp; ++i)
        jump(i) = field(ext[static_cast<std::size_t>(nfp - 1 - i)], nb) -
                  field(own[static_cast<std::size_t>(i)], e);

      const double scale = d.geom.jf(e, f) / d.geom.jac(e);
      const double nx = d.geom.nx(e, f), ny = d.geom.ny(e, f);
      const Matrix& lf = d.re.lift[static_cast<std::size_t>(f)];
      // Alternating upwind: p takes the exterior trace where n(i) < 0,
      // q where n(i) >= 0; the jump term vanishes otherwise.
      if (nx < 0.0)
        gp.px.col(e) += (scale * nx) * (lf * jump);
      else
        gp.qx.col(e) += (scale * nx) * (lf * jump);
      if (ny < 0.0)
        gp.py.col(e) += (scale * ny) * (lf * jump);
      else
        gp.qy.col(e) += (scale * ny) * (lf * jump);
    }
  });
  return gp;
}

void llf_alpha(const Vector& px, const Vector& py, const Vector& qx, const Vector& qy,
               double& a1, double& a2) {
  a1 = 0.0;
  a2 = 0.0;
  for (Eigen::Index i = 0; i < px.size(); ++i) {
    const double gx = 0.5 * (px(i) + qx(i));
    const double gy = 0.5 * (py(i) + qy(i));
    const double mag = std::hypot(gx, gy);
    if (mag < kGradFloor) {
      // |dH/dg_i| <= 1 for the Eikonal Hamiltonian; keep dissipation alive
      // at kinks where the averaged gradient vanishes.
      a1 = 1.0;
      a2 = 1.0;
    } else {
      a1 = std::max(a1, std::abs(gx) / mag);
      a2 = std::max(a2, std::abs(gy) / mag);
    }
  }
}

Vector llf_hamiltonian_column(const Vector& px, const Vector& py, const Vector& qx,
                              const Vector& qy) {
  double a1, a2;
  llf_alpha(px, py, qx, qy, a1, a2);
  Vector h(px.size());
  for (Eigen::Index i = 0; i < px.size(); ++i) {
    const double gx = 0.5 * (px(i) + qx(i));
    const double gy = 0.5 * (py(i) + qy(i));
    h(i) = std::hypot(gx, gy) - 0.5 * a1 * (qx(i) - px(i)) - 0.5 * a2 * (qy(i) - py(i));
  }
  return h;
}

Matrix llf_hamiltonian(const GradientPair& gp) {
  Matrix h(gp.px.rows(), gp.px.cols());
  for (Eigen::Index e = 0; e < gp.px.cols(); ++e)
    h.col(e) = llf_hamiltonian_column(gp.px.col(e), gp.py.col(e), gp.qx.col(e), gp.qy.col(e));
  return h;
}

} // namespace redist

#include "redist/jacobi.hpp"

#include <cmath>

namespace redist {

Vector jacobi_p(const Vector& x, double alpha, double beta, int n) {
  const auto np = x.size();
  Matrix pl(n + 1, np);

  const double gamma0 = std::pow(2.0, alpha + beta + 1.0) / (alpha + beta + 1.0) *
                        std::tgamma(alpha + 1.0) * std::tgamma(beta + 1.0) /
                        std::tgamma(alpha + beta + 1.0);
  pl.row(0).setConstant(1.0 / std::sqrt(gamma0));
  if (n == 0) return pl.row(0);

  const double gamma1 = (alpha + 1.0) * (beta + 1.0) / (alpha + beta + 3.0) * gamma0;
  pl.row(1) = ((((alpha + beta + 2.0) / 2.0) * x.transpose().array() + (alpha - beta) / 2.0) /
               std::sqrt(gamma1))
                  .matrix();
  if (n == 1) return pl.row(1);

  double aold = 2.0 / (2.0 + alpha + beta) *
                std::sqrt((alpha + 1.0) * (beta + 1.0) / (alpha + beta + 3.0));
  for (int i = 1; i < n; ++i) {
    const double h1 = 2.0 * i + alpha + beta;
    const double anew = 2.0 / (h1 + 2.0) *
                        std::sqrt((i + 1.0) * (i + 1.0 + alpha + beta) * (i + 1.0 + alpha) *
                                  (i + 1.0 + beta) / ((h1 + 1.0) * (h1 + 3.0)));
    const double bnew = -(alpha * alpha - beta * beta) / (h1 * (h1 + 2.0));
    pl.row(i + 1) = ((-aold * pl.row(i - 1).array() +
                      (x.transpose().array() - bnew) * pl.row(i).array()) /
                     anew)
                        .matrix();
    aold = anew;
  }
  return pl.row(n);
}

Vector grad_jacobi_p(const Vector& x, double alpha, double beta, int n) {
  if (n == 0) return Vector::Zero(x.size());
  return std::sqrt(n * (n + alpha + beta + 1.0)) *
         jacobi_p(x, alpha + 1.0, beta + 1.0, n - 1);
}

void jacobi_gq(double alpha, double beta, int n, Vector& x, Vector& w) {
  if (n == 0) {
    x = Vector::Constant(1, (beta - alpha) / (alpha + beta + 2.0));
    w = Vector::Constant(1, 2.0);
    return;
  }

  Matrix j = Matrix::Zero(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) {
    const double h1 = 2.0 * i + alpha + beta;
    double d = -(alpha * alpha - beta * beta) / ((h1 + 2.0) * h1);
    if (i == 0 && alpha + beta < 10.0 * std::numeric_limits<double>::epsilon()) d = 0.0;
    j(i, i) = d;
    if (i < n) {
      const double off = 2.0 / (h1 + 2.0) *
                         std::sqrt((i + 1.0) * (i + 1.0 + alpha + beta) * (i + 1.0 + alpha) *
                                   (i + 1.0 + beta) / ((h1 + 1.0) * (h1 + 3.0)));
      j(i, i + 1) = off;
      j(i + 1, i) = off;
    }
  }

  Eigen::SelfAdjointEigenSolver<Matrix> eig(j);
  x = eig.eigenvalues();
  const double gamma0 = std::pow(2.0, alpha + beta + 1.0) / (alpha + beta + 1.0) *
                        std::tgamma(alpha + 1.0) * std::tgamma(beta + 1.0) /
                        std::tgamma(alpha + beta + 1.0);
  w = (eig.eigenvectors().row(0).array().square() * gamma0).matrix().transpose();
}

Vector jacobi_gl(double alpha, double beta, int n) {
  Vector x(n + 1);
  x(0) = -1.0;
  x(n) = 1.0;
  if (n >= 2) {
    Vector xi, wi;
    jacobi_gq(alpha + 1.0, beta + 1.0, n - 2, xi, wi);
    x.segment(1, n - 1) = xi;
  }
  return x;
}

Matrix vandermonde_1d(int order, const Vector& nodes) {
  Matrix v(nodes.size(), order + 1);
  for (int j = 0; j <= order; ++j) v.col(j) = jacobi_p(nodes, 0.0, 0.0, j);
  return v;
}

QuadRule triangle_quadrature(int degree) {
  const int n = degree / 2 + 1; // Gauss rules exact to 2n-1 >= degree
  Vector a, wa, b, wb;
  jacobi_gq(0.0, 0.0, n - 1, a, wa);
  jacobi_gq(1.0, 0.0, n - 1, b, wb); // weight (1-b) absorbs the collapse factor

  QuadRule q;
  q.x.resize(n * n);
  q.y.resize(n * n);
  q.w.resize(n * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j, ++k) {
      q.x(k) = 0.5 * (1.0 + a(i)) * (1.0 - b(j)) - 1.0;
      q.y(k) = b(j);
      q.w(k) = 0.5 * wa(i) * wb(j);
    }
  }
  return q;
}

void gauss_legendre(int degree, Vector& x, Vector& w) {
  const int n = degree / 2 + 1;
  jacobi_gq(0.0, 0.0, n - 1, x, w);
}

} // namespace redist

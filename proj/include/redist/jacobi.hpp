#pragma once

#include "redist/types.hpp"

namespace redist {

/// Normalized Jacobi polynomial P_n^(alpha,beta) evaluated at x
/// (orthonormal on [-1,1] with weight (1-x)^alpha (1+x)^beta).
Vector jacobi_p(const Vector& x, double alpha, double beta, int n);

/// Derivative of the normalized Jacobi polynomial.
Vector grad_jacobi_p(const Vector& x, double alpha, double beta, int n);

/// Gauss quadrature nodes/weights for the Jacobi weight (n+1 points,
/// exact to degree 2n+1).
void jacobi_gq(double alpha, double beta, int n, Vector& x, Vector& w);

/// Gauss-Lobatto nodes for the Jacobi weight (n+1 points including ±1).
Vector jacobi_gl(double alpha, double beta, int n);

/// 1D Vandermonde of normalized Legendre polynomials at the given nodes.
Matrix vandermonde_1d(int order, const Vector& nodes);

struct QuadRule {
  Vector x, y, w; // on the bi-unit triangle for 2D rules; w sums to the area
};

/// Collapsed-coordinate Gauss rule on the bi-unit triangle, exact for
/// polynomials of total degree <= degree. Weights sum to 2.
QuadRule triangle_quadrature(int degree);

/// Gauss-Legendre rule on [-1,1] exact to the given degree.
void gauss_legendre(int degree, Vector& x, Vector& w);

} // namespace redist

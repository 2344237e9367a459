// Closed-form CMC hypersurfaces used as oracles: equidistant surfaces over a
// totally geodesic plane and cylindrical (product) surfaces, with their shape
// operators, |II|^2 values and the sharp curvature bound.

#ifndef ADSCMC_EXACT_SURFACES_HPP_
#define ADSCMC_EXACT_SURFACES_HPP_

#include "adscmc/quadric.hpp"

namespace ads {

enum class Side { Past, Future };

// Graph of the equidistant surface P^{+-}_theta over H^n in the standard
// chart: t(x) = -+ arcsin(sin theta / cosh rho).
double equidistant_graph(double theta, Side side, const Vec& hyperboloid_x);

// Mean curvature H_{+-}(theta) = -+ n tan(theta).
double equidistant_H(double theta, Side side, int n);

// Product surface H(k, theta): points cos(theta) x + sin(theta) y with x in a
// k-dimensional totally geodesic H^k and y in its future dual H^{n-k}.
// Coordinate-aligned frame: H^k spans coordinates {1..k, n+1}, the dual spans
// {k+1..n, n+2}; an explicit O(n,2) matrix may replace it.
struct CylindricalSurface {
  int n = 2;
  int k = 1;
  double theta = 0.0;
  Eigen::MatrixXd frame;  // (n+2)x(n+2) isometry applied to the aligned frame

  CylindricalSurface(int n_, int k_, double theta_);
  CylindricalSurface(int n_, int k_, double theta_, const Eigen::MatrixXd& Q);
};

// Embeds factor points xk in H^k and ym in H^{n-k} (hyperboloid coordinates,
// sizes k+1 and n-k+1).
QuadricPoint cylinder_embed(const CylindricalSurface& s, const Vec& xk,
                            const Vec& ym);

// Shape operator eigenvalues: (tan theta, multiplicity k) and
// (-1/tan theta, multiplicity n-k).
struct ShapeEigenvalues {
  double lambda_k;
  int mult_k;
  double lambda_m;
  int mult_m;

  double trace() const { return mult_k * lambda_k + mult_m * lambda_m; }
};

ShapeEigenvalues cylinder_shape_operator(const CylindricalSurface& s);

// Mean curvature k tan(theta) - (n-k)/tan(theta).
double cylinder_H(int k, double theta, int n);

// |II|^2 of H(k, theta): k tan^2 + (n-k)/tan^2.
double cylinder_ii_norm(int k, double theta, int n);

// |II|^2 of the H(k, .) leaf with mean curvature H, via the closed form
// S(k, theta) = n + (n H^2 + H (n-2k) sqrt(H^2 + 4k(n-k))) / (2k(n-k)),
// reducing to H^2/n for the umbilic cases k = 0, n.
double cylinder_ii_norm_from_H(int k, double H, int n);

// Angle of the H(k, .) leaf with mean curvature H: tan(theta) is the
// positive root of k t^2 - H t - (n - k) = 0.
double cylinder_theta_from_H(int k, double H, int n);

// Sharp universal bound n + (n L^2 + L(n-2) sqrt(L^2 + 4(n-1))) / (2(n-1))
// on |II|^2 of entire CMC hypersurfaces with |H| <= L; equals S(1, theta_L).
double bound_rhs(double L, int n);

// Angle of the extremal cylinder: tan(theta_H) is the positive solution of
// t^2 - H t - (n-1) = 0; the k = 1 cylinder at this angle attains
// bound_rhs(H, n) for H >= 0.
double extremal_theta(double H, int n);

// The k = 1, n = 2 cylinder sliced as a graph over H^2 in the standard chart
// (entire graph; theta in (0, pi/2)).
double cylinder_graph_n2(double theta, const Vec& hyperboloid_x);

}  // namespace ads

#endif  // ADSCMC_EXACT_SURFACES_HPP_

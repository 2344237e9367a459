// Admissible asymptotic boundary data on the circle, extremal 1-Lipschitz
// extensions to the conformal hemisphere, invisible-domain membership, the
// projective convex hull, cosmological times and their barrier level sets.
// Geometry here is n = 2: the boundary circle is the equator of S^2 and H^2
// is identified with the open upper hemisphere (sin alpha = tanh rho).

#ifndef ADSCMC_BOUNDARY_HPP_
#define ADSCMC_BOUNDARY_HPP_

#include <functional>
#include <string>
#include <vector>

#include "adscmc/quadric.hpp"

namespace ads {

// Spherical distance between hemisphere points given as hyperboloid points
// of H^2; cos d = (1 + x1 y1 + x2 y2) / (x3 y3).
double conformal_distance(const Vec& x, const Vec& y);

// Spherical distance from a hyperboloid point to the equator point at angle
// phi; cos d = (x1 cos phi + x2 sin phi) / x3.
double conformal_distance_to_equator(const Vec& x, double phi);

// Sampled 1-Lipschitz function on the equator circle, piecewise linear in
// angle. Angles in [0, 2pi), values in radians.
class BoundaryData {
 public:
  BoundaryData(std::vector<double> angles, std::vector<double> values);

  static BoundaryData constant(double c, int count = 32);
  static BoundaryData from_function(const std::function<double(double)>& f,
                                    int count);
  static BoundaryData load(const std::string& path);
  void save(const std::string& path) const;

  double operator()(double phi) const;  // periodic piecewise-linear value
  const std::vector<double>& angles() const { return phi_; }
  const std::vector<double>& values() const { return val_; }
  int size() const { return static_cast<int>(phi_.size()); }

  // Null-ray representative of the boundary point over angle phi, normalized
  // to x3^2 + x4^2 = 1: (cos phi, sin phi, cos f, sin f).
  Eigen::Vector4d null_ray(double phi) const;

 private:
  std::vector<double> phi_;
  std::vector<double> val_;
};

double oscillation(const BoundaryData& f);
bool is_admissible(const BoundaryData& f);

// McShane extremal extensions of f to the closed hemisphere:
//   upper(x) = min_xi (f(xi) + d(x, xi)),  lower(x) = max_xi (f(xi) - d(x, xi)).
class ExtremalPair {
 public:
  explicit ExtremalPair(BoundaryData f);

  double upper(const Vec& hyperboloid_x) const;
  double lower(const Vec& hyperboloid_x) const;
  // Hemisphere coordinates: alpha in [0, pi/2] is the polar distance from the
  // hemisphere pole (sin alpha = tanh rho), phi the equator angle.
  double upper_at(double alpha, double phi) const;
  double lower_at(double alpha, double phi) const;

  const BoundaryData& boundary() const { return f_; }

 private:
  double extend(double alpha, double phi, bool up) const;

  BoundaryData f_;
  int grid_;
};

ExtremalPair extremal_extensions(const BoundaryData& f);

// Strict membership u-(x) < t < u+(x) of a split coordinate in the invisible
// domain.
bool invisible_membership(const SplitCoord& p, const ExtremalPair& ext);

// Support-plane model of the convex hull of the boundary cone in R^{2,2}.
struct ConvexHullModel {
  // Rows w: half-space {<w, .> <= 0} containing every sampled null ray.
  Eigen::MatrixXd planes;
  std::vector<Eigen::Vector4d> rays;  // sampled boundary cone points
  bool flat = false;                  // cone spans a 3-dimensional subspace
  double mid_band = 0.0;              // fiber angle seeding the feasible arc
};

ConvexHullModel convex_hull_build(const BoundaryData& f, int plane_budget = 4096);

enum class HullSide { Lower, Upper };

// Fiber angle at which the vertical line over x enters (Lower) or exits
// (Upper) the hull.
double ch_boundary_value(const Vec& hyperboloid_x, const ConvexHullModel& hull,
                         HullSide side);

// Cosmological times tau_past / tau_future of the invisible domain, evaluated
// as a refined sup of Lorentzian distance over the sampled boundary graphs of
// u- / u+. Construction caches the extremal extensions on a hemisphere grid.
class CosmologicalTimes {
 public:
  explicit CosmologicalTimes(const ExtremalPair& ext, int n_alpha = 24,
                             int n_phi = 48);

  double tau(const SplitCoord& p, bool past) const;
  // Arg-sup of the defining variational problem (the retraction point),
  // exposed for diagnostics.
  SplitCoord retraction(const SplitCoord& p, bool past) const;

  // Cached bilinear interpolants of the extremal extensions.
  double lower_grid(double alpha, double phi) const;
  double upper_grid(double alpha, double phi) const;

 private:
  double sup_distance(const SplitCoord& p, bool past, double* arg_alpha,
                      double* arg_phi) const;
  double graph_value(double alpha, double phi, bool past) const;

  int na_, nphi_;            // coarse scan resolution of the sup search
  int fine_na_, fine_nphi_;  // cached extension grids
  Eigen::MatrixXd fine_lo_, fine_hi_;
};

enum class BarrierSide { PastBarrier, FutureBarrier };

// Fiber value over x of the level set {tau_past = pi/2 - theta} (past
// barrier W^-_theta) or {tau_future = pi/2 - theta} (future barrier), found
// by monotone bisection in t. An optional bracket hint narrows the search.
double barrier_graph(double theta, BarrierSide side,
                     const CosmologicalTimes& times, const ExtremalPair& ext,
                     const Vec& hyperboloid_x, double tol = 1e-6,
                     const double* hint = nullptr);

}  // namespace ads

#endif  // ADSCMC_BOUNDARY_HPP_

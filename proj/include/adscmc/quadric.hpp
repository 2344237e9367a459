// Closed-form Anti-de Sitter geometry in the quadric model: the signature
// (n,2) bilinear form, geodesics, causal classification of point pairs,
// Lorentzian distance, hyperbolic splittings and the conformal chart.

#ifndef ADSCMC_QUADRIC_HPP_
#define ADSCMC_QUADRIC_HPP_

#include <Eigen/Dense>

namespace ads {

using Vec = Eigen::VectorXd;

// Tolerances used throughout the causal kernel.
constexpr double kQuadricTol = 1e-10;
constexpr double kCausalTol = 1e-9;

// Signature (n,2) form on R^{n,2}: first n coordinates positive, last two
// negative. n is implied by the vector dimension (n = dim - 2).
double bilinear_form(const Vec& a, const Vec& b);

// Signature (n,1) form on R^{n,1}, used for hyperboloid coordinates of H^n.
double minkowski_form(const Vec& x, const Vec& y);

// Distance in H^n between hyperboloid points (last coordinate >= 1).
double hyperbolic_distance(const Vec& x, const Vec& y);

// A point of the quadric {<x,x> = -1}. Construction normalizes.
struct QuadricPoint {
  Vec v;

  QuadricPoint() = default;
  explicit QuadricPoint(Vec coords);

  int n() const { return static_cast<int>(v.size()) - 2; }
};

// Tangent vector at a quadric point; dir lies in base^perp.
struct TangentVector {
  QuadricPoint base;
  Vec dir;

  TangentVector(QuadricPoint b, Vec d);
};

enum class CausalClass {
  TimeRelated,
  LightRelated,
  SpaceRelated,
  AntipodalLight,
  AntipodalSpace,
  Coincident,
  Antipodal,
};

const char* to_string(CausalClass c);

// Geodesic exp_x(t v): cos/cosh/affine depending on the causal type of dir.
// dir must be unit timelike, unit spacelike or null.
QuadricPoint exp_map(const TangentVector& v, double t);

// Classification of an ordered pair by the value of <p,q>.
CausalClass classify_pair(const QuadricPoint& p, const QuadricPoint& q);

// arccos(-<p,q>) for time-related pairs; throws otherwise.
double lorentzian_distance(const QuadricPoint& p, const QuadricPoint& q);

// Quadric antipode -p; the dual hyperplane {<p,.> = 0} sits at Lorentzian
// distance pi/2 from p.
QuadricPoint dual_point(const QuadricPoint& p, bool future = true);

// U_p = {q : <p,q> < 0}, the fundamental region of p.
bool in_fundamental_region(const QuadricPoint& p, const QuadricPoint& q);

// A splitting H^n x R -> quadric. Stored as a form-orthogonal matrix Q
// acting on the standard chart
//   psi(x, t) = (x_1, ..., x_n, x_{n+1} cos t, x_{n+1} sin t),
// so that Q e_{n+1} = basepoint and Q e_{n+2} = future unit normal there.
struct SplitChart {
  Eigen::MatrixXd frame;  // (n+2) x (n+2), identity for the standard chart

  static SplitChart standard(int n);
  static SplitChart from_isometry(const Eigen::MatrixXd& Q);

  int n() const { return static_cast<int>(frame.rows()) - 2; }
  Vec basepoint() const { return frame.col(frame.rows() - 2); }
  Vec normal() const { return frame.col(frame.rows() - 1); }
};

// Coordinates (x, t) with x on the H^n hyperboloid and t the fiber angle.
struct SplitCoord {
  Vec x;
  double t = 0.0;
};

QuadricPoint split_embed(const SplitCoord& c, const SplitChart& chart);

// Inverse of split_embed with fiber angle chosen in (hint - pi, hint + pi].
SplitCoord split_lift(const QuadricPoint& y, const SplitChart& chart,
                      double branch_hint = 0.0);

// x_{n+1}^2 = cosh^2 of the hyperbolic distance from the chart center; the
// square of the conformal factor between the split metric and g_{S^n} - dt^2.
double conformal_factor(const Vec& hyperboloid_x);

// Origin of H^n in hyperboloid coordinates.
Vec hyperboloid_origin(int n);

// Point of H^n at distance rho from the origin in direction dir (unit vector
// in R^n).
Vec hyperboloid_point(double rho, const Vec& dir);

}  // namespace ads

#endif  // ADSCMC_QUADRIC_HPP_

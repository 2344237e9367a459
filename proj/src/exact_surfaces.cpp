#include "adscmc/exact_surfaces.hpp"

#include <cmath>
#include <stdexcept>

namespace ads {

namespace {
constexpr double kThetaClamp = 1e-8;

double sign_of(Side s) { return s == Side::Past ? -1.0 : 1.0; }
}  // namespace

double equidistant_graph(double theta, Side side, const Vec& hyperboloid_x) {
  if (theta < 0.0 || theta >= M_PI_2) {
    throw std::invalid_argument("equidistant_graph: theta outside [0, pi/2)");
  }
  // P^{-+}_theta = cos(theta) p -+ sin(theta) e over the plane {x_{n+2} = 0},
  // so the last ambient coordinate is constant: cosh(rho) sin t = -+ sin(theta).
  const double xn = hyperboloid_x(hyperboloid_x.size() - 1);
  return sign_of(side) * std::asin(std::sin(theta) / xn);
}

double equidistant_H(double theta, Side side, int n) {
  if (theta < 0.0 || theta >= M_PI_2) {
    throw std::invalid_argument("equidistant_H: theta outside [0, pi/2)");
  }
  return -sign_of(side) * n * std::tan(theta);
}

CylindricalSurface::CylindricalSurface(int n_, int k_, double theta_)
    : CylindricalSurface(n_, k_, theta_,
                         Eigen::MatrixXd::Identity(n_ + 2, n_ + 2)) {}

CylindricalSurface::CylindricalSurface(int n_, int k_, double theta_,
                                       const Eigen::MatrixXd& Q)
    : n(n_), k(k_), theta(theta_), frame(SplitChart::from_isometry(Q).frame) {
  if (k < 0 || k > n) {
    throw std::invalid_argument("CylindricalSurface: k outside [0, n]");
  }
  theta = std::clamp(theta, kThetaClamp, M_PI_2 - kThetaClamp);
}

QuadricPoint cylinder_embed(const CylindricalSurface& s, const Vec& xk,
                            const Vec& ym) {
  if (xk.size() != s.k + 1 || ym.size() != s.n - s.k + 1) {
    throw std::invalid_argument("cylinder_embed: factor dimension mismatch");
  }
  // Aligned frame: H^k spans {1..k, n+1}, the dual H^{n-k} spans {k+1..n, n+2}.
  Vec x = Vec::Zero(s.n + 2);
  x.head(s.k) = xk.head(s.k);
  x(s.n) = xk(s.k);
  Vec y = Vec::Zero(s.n + 2);
  y.segment(s.k, s.n - s.k) = ym.head(s.n - s.k);
  y(s.n + 1) = ym(s.n - s.k);
  QuadricPoint out;
  out.v = s.frame * (std::cos(s.theta) * x + std::sin(s.theta) * y);
  return out;
}

ShapeEigenvalues cylinder_shape_operator(const CylindricalSurface& s) {
  const double t = std::tan(s.theta);
  return {t, s.k, -1.0 / t, s.n - s.k};
}

double cylinder_H(int k, double theta, int n) {
  const double t = std::tan(std::clamp(theta, kThetaClamp, M_PI_2 - kThetaClamp));
  return k * t - (n - k) / t;
}

double cylinder_ii_norm(int k, double theta, int n) {
  const double t = std::tan(std::clamp(theta, kThetaClamp, M_PI_2 - kThetaClamp));
  return k * t * t + (n - k) / (t * t);
}

double cylinder_theta_from_H(int k, double H, int n) {
  if (k <= 0 || k >= n) {
    throw std::invalid_argument("cylinder_theta_from_H: need 0 < k < n");
  }
  const double t = (H + std::sqrt(H * H + 4.0 * k * (n - k))) / (2.0 * k);
  return std::atan(t);
}

double cylinder_ii_norm_from_H(int k, double H, int n) {
  if (k < 0 || k > n) {
    throw std::invalid_argument("cylinder_ii_norm_from_H: k outside [0, n]");
  }
  if (k == 0 || k == n) {
    return H * H / n;
  }
  const double km = static_cast<double>(k) * (n - k);
  return n +
         (n * H * H + H * (n - 2 * k) * std::sqrt(H * H + 4.0 * km)) /
             (2.0 * km);
}

double bound_rhs(double L, int n) {
  // Sharp value S(1, theta_L): substituting tan(theta_L) into
  // tan^2 + (n-1)/tan^2 gives n + (n L^2 + L(n-2) sqrt(L^2+4(n-1)))/(2(n-1)).
  return n + (n * L * L + L * (n - 2) * std::sqrt(L * L + 4.0 * (n - 1))) /
                 (2.0 * (n - 1));
}

double extremal_theta(double H, int n) {
  return std::atan((H + std::sqrt(H * H + 4.0 * (n - 1))) / 2.0);
}

double cylinder_graph_n2(double theta, const Vec& hyperboloid_x) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double sinh_a = hyperboloid_x(0) / c;
  const double sinh_b = hyperboloid_x(1) / s;
  const double cosh_a = std::sqrt(1.0 + sinh_a * sinh_a);
  const double cosh_b = std::sqrt(1.0 + sinh_b * sinh_b);
  return std::atan2(s * cosh_b, c * cosh_a);
}

}  // namespace ads

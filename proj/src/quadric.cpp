#include "adscmc/quadric.hpp"

#include <cmath>
#include <stdexcept>

namespace ads {

double bilinear_form(const Vec& a, const Vec& b) {
  if (a.size() != b.size() || a.size() < 4) {
    throw std::invalid_argument("bilinear_form: dimension mismatch");
  }
  const auto n = a.size() - 2;
  return a.head(n).dot(b.head(n)) - a(n) * b(n) - a(n + 1) * b(n + 1);
}

double minkowski_form(const Vec& x, const Vec& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("minkowski_form: dimension mismatch");
  }
  const auto n = x.size() - 1;
  return x.head(n).dot(y.head(n)) - x(n) * y(n);
}

double hyperbolic_distance(const Vec& x, const Vec& y) {
  const double c = -minkowski_form(x, y);
  return std::acosh(std::max(c, 1.0));
}

QuadricPoint::QuadricPoint(Vec coords) : v(std::move(coords)) {
  const double q = bilinear_form(v, v);
  if (q >= 0.0) {
    throw std::invalid_argument("QuadricPoint: vector is not negative");
  }
  v /= std::sqrt(-q);
}

TangentVector::TangentVector(QuadricPoint b, Vec d)
    : base(std::move(b)), dir(std::move(d)) {
  // Project out the radial component so the tangency constraint is exact.
  const double r = bilinear_form(base.v, dir);
  dir += r * base.v;  // <base,base> = -1
}

const char* to_string(CausalClass c) {
  switch (c) {
    case CausalClass::TimeRelated: return "time-related";
    case CausalClass::LightRelated: return "light-related";
    case CausalClass::SpaceRelated: return "space-related";
    case CausalClass::AntipodalLight: return "antipodal-light";
    case CausalClass::AntipodalSpace: return "antipodal-space";
    case CausalClass::Coincident: return "coincident";
    case CausalClass::Antipodal: return "antipodal";
  }
  return "unknown";
}

QuadricPoint exp_map(const TangentVector& v, double t) {
  const double q = bilinear_form(v.dir, v.dir);
  Vec out;
  if (std::abs(q) <= 1e-8) {
    out = v.base.v + t * v.dir;
  } else if (std::abs(q + 1.0) <= 1e-8) {
    out = std::cos(t) * v.base.v + std::sin(t) * v.dir;
  } else if (std::abs(q - 1.0) <= 1e-8) {
    out = std::cosh(t) * v.base.v + std::sinh(t) * v.dir;
  } else {
    throw std::invalid_argument("exp_map: direction must be unit or null");
  }
  return QuadricPoint(std::move(out));
}

CausalClass classify_pair(const QuadricPoint& p, const QuadricPoint& q) {
  if ((p.v - q.v).cwiseAbs().maxCoeff() <= kCausalTol) {
    return CausalClass::Coincident;
  }
  if ((p.v + q.v).cwiseAbs().maxCoeff() <= kCausalTol) {
    return CausalClass::Antipodal;
  }
  const double s = bilinear_form(p.v, q.v);
  if (std::abs(s + 1.0) <= kCausalTol) return CausalClass::LightRelated;
  if (std::abs(s - 1.0) <= kCausalTol) return CausalClass::AntipodalLight;
  if (s < -1.0) return CausalClass::SpaceRelated;
  if (s > 1.0) return CausalClass::AntipodalSpace;
  return CausalClass::TimeRelated;
}

double lorentzian_distance(const QuadricPoint& p, const QuadricPoint& q) {
  const CausalClass c = classify_pair(p, q);
  if (c != CausalClass::TimeRelated && c != CausalClass::Coincident) {
    throw std::invalid_argument("lorentzian_distance: pair not time-related");
  }
  const double s = std::clamp(-bilinear_form(p.v, q.v), -1.0, 1.0);
  return std::acos(s);
}

QuadricPoint dual_point(const QuadricPoint& p, bool /*future*/) {
  QuadricPoint out = p;
  out.v = -out.v;
  return out;
}

bool in_fundamental_region(const QuadricPoint& p, const QuadricPoint& q) {
  return bilinear_form(p.v, q.v) < 0.0;
}

SplitChart SplitChart::standard(int n) {
  SplitChart c;
  c.frame = Eigen::MatrixXd::Identity(n + 2, n + 2);
  return c;
}

SplitChart SplitChart::from_isometry(const Eigen::MatrixXd& Q) {
  const auto m = Q.rows();
  if (m != Q.cols() || m < 4) {
    throw std::invalid_argument("SplitChart: matrix must be square, n >= 2");
  }
  Eigen::VectorXd eta = Eigen::VectorXd::Ones(m);
  eta(m - 2) = -1.0;
  eta(m - 1) = -1.0;
  const Eigen::MatrixXd gram = Q.transpose() * eta.asDiagonal() * Q;
  if ((gram - Eigen::MatrixXd(eta.asDiagonal())).cwiseAbs().maxCoeff() > 1e-8) {
    throw std::invalid_argument("SplitChart: matrix not in O(n,2)");
  }
  SplitChart c;
  c.frame = Q;
  return c;
}

QuadricPoint split_embed(const SplitCoord& c, const SplitChart& chart) {
  const int n = chart.n();
  if (c.x.size() != n + 1) {
    throw std::invalid_argument("split_embed: coordinate dimension mismatch");
  }
  Vec y(n + 2);
  y.head(n) = c.x.head(n);
  y(n) = c.x(n) * std::cos(c.t);
  y(n + 1) = c.x(n) * std::sin(c.t);
  QuadricPoint out;
  out.v = chart.frame * y;
  return out;
}

SplitCoord split_lift(const QuadricPoint& y, const SplitChart& chart,
                      double branch_hint) {
  const int n = chart.n();
  // Q^{-1} = eta Q^T eta for Q in O(n,2).
  Vec eta = Vec::Ones(n + 2);
  eta(n) = -1.0;
  eta(n + 1) = -1.0;
  const Vec w = eta.asDiagonal() * (chart.frame.transpose() * (eta.asDiagonal() * y.v));
  SplitCoord c;
  c.x.resize(n + 1);
  c.x.head(n) = w.head(n);
  c.x(n) = std::hypot(w(n), w(n + 1));
  if (c.x(n) < kQuadricTol) {
    throw std::invalid_argument("split_lift: point on the chart singular set");
  }
  double t = std::atan2(w(n + 1), w(n));
  const double two_pi = 2.0 * M_PI;
  t += two_pi * std::floor((branch_hint - t) / two_pi + 0.5);
  c.t = t;
  return c;
}

double conformal_factor(const Vec& hyperboloid_x) {
  const double xn = hyperboloid_x(hyperboloid_x.size() - 1);
  return xn * xn;
}

Vec hyperboloid_origin(int n) {
  Vec x = Vec::Zero(n + 1);
  x(n) = 1.0;
  return x;
}

Vec hyperboloid_point(double rho, const Vec& dir) {
  const auto n = dir.size();
  Vec x(n + 1);
  x.head(n) = std::sinh(rho) * dir.normalized();
  x(n) = std::cosh(rho);
  return x;
}

}  // namespace ads

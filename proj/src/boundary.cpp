#include "adscmc/boundary.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ads {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kAdmissibleMargin = 1e-6;

double wrap_angle(double phi) {
  phi = std::fmod(phi, kTwoPi);
  return phi < 0.0 ? phi + kTwoPi : phi;
}

double circle_distance(double a, double b) {
  const double d = std::abs(wrap_angle(a) - wrap_angle(b));
  return std::min(d, kTwoPi - d);
}

// Golden-section minimization on [a, b].
double golden_min(const std::function<double(double)>& g, double a, double b,
                  double* argmin) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = g(c), fd = g(d);
  for (int it = 0; it < 80 && (b - a) > 1e-13; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = g(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = g(d);
    }
  }
  const double x = 0.5 * (a + b);
  if (argmin) *argmin = x;
  return g(x);
}

}  // namespace

double conformal_distance(const Vec& x, const Vec& y) {
  const double c = (1.0 + x(0) * y(0) + x(1) * y(1)) / (x(2) * y(2));
  return std::acos(std::clamp(c, -1.0, 1.0));
}

double conformal_distance_to_equator(const Vec& x, double phi) {
  const double c = (x(0) * std::cos(phi) + x(1) * std::sin(phi)) / x(2);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

BoundaryData::BoundaryData(std::vector<double> angles,
                           std::vector<double> values) {
  if (angles.size() != values.size() || angles.size() < 8) {
    throw std::invalid_argument("BoundaryData: need >= 8 samples");
  }
  std::vector<int> order(angles.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return wrap_angle(angles[i]) < wrap_angle(angles[j]);
  });
  for (int i : order) {
    phi_.push_back(wrap_angle(angles[i]));
    val_.push_back(values[i]);
  }
  const int m = size();
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const double d = circle_distance(phi_[i], phi_[j]);
      if (std::abs(val_[i] - val_[j]) > d * (1.0 + 1e-8) + 1e-14) {
        throw std::invalid_argument("BoundaryData: samples violate the 1-Lipschitz bound");
      }
    }
  }
}

BoundaryData BoundaryData::constant(double c, int count) {
  std::vector<double> a(count), v(count, c);
  for (int i = 0; i < count; ++i) a[i] = kTwoPi * i / count;
  return BoundaryData(std::move(a), std::move(v));
}

BoundaryData BoundaryData::from_function(const std::function<double(double)>& f,
                                         int count) {
  std::vector<double> a(count), v(count);
  for (int i = 0; i < count; ++i) {
    a[i] = kTwoPi * i / count;
    v[i] = f(a[i]);
  }
  return BoundaryData(std::move(a), std::move(v));
}

BoundaryData BoundaryData::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("BoundaryData: cannot open " + path);
  std::vector<double> a, v;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    double phi, val;
    if (!(ls >> phi >> val)) {
      throw std::runtime_error("BoundaryData: malformed line: " + line);
    }
    a.push_back(phi);
    v.push_back(val);
  }
  return BoundaryData(std::move(a), std::move(v));
}

void BoundaryData::save(const std::string& path) const {
  std::ofstream out(path);
  char buf[80];
  for (int i = 0; i < size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", phi_[i], val_[i]);
    out << buf;
  }
}

double BoundaryData::operator()(double phi) const {
  phi = wrap_angle(phi);
  const auto it = std::upper_bound(phi_.begin(), phi_.end(), phi);
  const int j = static_cast<int>(it - phi_.begin()) % size();
  const int i = (j + size() - 1) % size();
  double span = phi_[j] - phi_[i];
  double off = phi - phi_[i];
  if (span <= 0.0) span += kTwoPi;
  if (off < 0.0) off += kTwoPi;
  const double w = span > 0.0 ? off / span : 0.0;
  return (1.0 - w) * val_[i] + w * val_[j];
}

Eigen::Vector4d BoundaryData::null_ray(double phi) const {
  const double f = (*this)(phi);
  return {std::cos(phi), std::sin(phi), std::cos(f), std::sin(f)};
}

double oscillation(const BoundaryData& f) {
  const auto [lo, hi] =
      std::minmax_element(f.values().begin(), f.values().end());
  return *hi - *lo;
}

bool is_admissible(const BoundaryData& f) {
  return oscillation(f) < M_PI - kAdmissibleMargin;
}

ExtremalPair::ExtremalPair(BoundaryData f) : f_(std::move(f)) {
  grid_ = std::max(1024, 8 * f_.size());
}

ExtremalPair extremal_extensions(const BoundaryData& f) {
  if (!is_admissible(f)) {
    throw std::invalid_argument("extremal_extensions: boundary not admissible");
  }
  return ExtremalPair(f);
}

double ExtremalPair::extend(double alpha, double phi, bool up) const {
  const double sa = std::sin(alpha);
  const auto objective = [&](double psi) {
    const double d = std::acos(std::clamp(sa * std::cos(phi - psi), -1.0, 1.0));
    return up ? f_(psi) + d : -(f_(psi) - d);
  };
  double best = objective(phi);
  double arg = phi;
  const double step = kTwoPi / grid_;
  for (int i = 0; i < grid_; ++i) {
    const double psi = i * step;
    const double v = objective(psi);
    if (v < best) {
      best = v;
      arg = psi;
    }
  }
  best = std::min(best, golden_min(objective, arg - step, arg + step, nullptr));
  return up ? best : -best;
}

double ExtremalPair::upper_at(double alpha, double phi) const {
  return extend(alpha, phi, true);
}

double ExtremalPair::lower_at(double alpha, double phi) const {
  return extend(alpha, phi, false);
}

double ExtremalPair::upper(const Vec& x) const {
  const double alpha = std::asin(std::clamp(std::tanh(std::acosh(std::max(x(2), 1.0))), 0.0, 1.0));
  return upper_at(alpha, std::atan2(x(1), x(0)));
}

double ExtremalPair::lower(const Vec& x) const {
  const double alpha = std::asin(std::clamp(std::tanh(std::acosh(std::max(x(2), 1.0))), 0.0, 1.0));
  return lower_at(alpha, std::atan2(x(1), x(0)));
}

bool invisible_membership(const SplitCoord& p, const ExtremalPair& ext) {
  const double lo = ext.lower(p.x);
  const double hi = ext.upper(p.x);
  return p.t > lo + kCausalTol && p.t < hi - kCausalTol;
}

ConvexHullModel convex_hull_build(const BoundaryData& f, int plane_budget) {
  if (!is_admissible(f)) {
    throw std::invalid_argument("convex_hull_build: boundary not admissible");
  }
  ConvexHullModel hull;
  const auto [lo, hi] = std::minmax_element(f.values().begin(), f.values().end());
  hull.mid_band = 0.5 * (*lo + *hi);

  // Candidate rays: a uniform resampling plus the original sample angles.
  std::vector<double> angles(f.angles());
  const int uniform = 96;
  for (int i = 0; i < uniform; ++i) angles.push_back(kTwoPi * i / uniform);
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               angles.end());
  for (double a : angles) hull.rays.push_back(f.null_ray(a));
  const int m = static_cast<int>(hull.rays.size());

  Eigen::MatrixXd R(m, 4);
  for (int i = 0; i < m; ++i) R.row(i) = hull.rays[i].transpose();

  // Flat hull: the cone spans only a 3-dimensional subspace.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(R, Eigen::ComputeFullV);
  std::vector<Eigen::Vector4d> normals;
  if (svd.singularValues()(3) < 1e-10 * svd.singularValues()(0)) {
    hull.flat = true;
    const Eigen::Vector4d c = svd.matrixV().col(3);
    normals.push_back(c);
    normals.push_back(-c);
  } else {
    // Facet enumeration: a support plane of the cone is spanned by three rays
    // with every other ray on one side.
    std::set<std::array<long, 4>> seen;
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        for (int k = j + 1; k < m; ++k) {
          const Eigen::Vector4d &a = hull.rays[i], &b = hull.rays[j],
                                &d = hull.rays[k];
          Eigen::Vector4d c;  // generalized cross product in R^4
          for (int col = 0; col < 4; ++col) {
            Eigen::Matrix3d minor;
            int cc = 0;
            for (int col2 = 0; col2 < 4; ++col2) {
              if (col2 == col) continue;
              minor(0, cc) = a(col2);
              minor(1, cc) = b(col2);
              minor(2, cc) = d(col2);
              ++cc;
            }
            c(col) = ((col % 2) ? -1.0 : 1.0) * minor.determinant();
          }
          const double nrm = c.norm();
          if (nrm < 1e-10) continue;
          c /= nrm;
          double smin = 0.0, smax = 0.0;
          for (int q = 0; q < m; ++q) {
            const double s = c.dot(hull.rays[q]);
            smin = std::min(smin, s);
            smax = std::max(smax, s);
          }
          const double tol = 1e-9;
          if (smax > tol && smin < -tol) continue;  // not a support plane
          if (smax > tol) c = -c;
          std::array<long, 4> key;
          for (int col = 0; col < 4; ++col) {
            key[col] = std::lround(c(col) * 1e8);
          }
          if (seen.insert(key).second) normals.push_back(c);
        }
      }
    }
  }
  if (static_cast<int>(normals.size()) > plane_budget) {
    normals.resize(plane_budget);
  }
  // Store as form covectors w with <w, .> = c . (euclidean); w = eta c.
  hull.planes.resize(static_cast<int>(normals.size()), 4);
  for (int i = 0; i < hull.planes.rows(); ++i) {
    Eigen::Vector4d w = normals[i];
    w(2) = -w(2);
    w(3) = -w(3);
    hull.planes.row(i) = w.transpose();
  }
  // Certify every sampled ray against every retained half-space.
  for (const auto& r : hull.rays) {
    for (int i = 0; i < hull.planes.rows(); ++i) {
      Vec w = hull.planes.row(i).transpose();
      Vec rv = r;
      if (!hull.flat && bilinear_form(w, rv) > 1e-8) {
        throw std::runtime_error("convex_hull_build: certification failed");
      }
    }
  }
  return hull;
}

double ch_boundary_value(const Vec& x, const ConvexHullModel& hull,
                         HullSide side) {
  const int np = static_cast<int>(hull.planes.rows());
  if (np == 0) throw std::invalid_argument("ch_boundary_value: empty hull");
  // Constraint i on the fiber over x: g_i(t) = A_i + B_i cos t + C_i sin t <= 0
  // for psi(x, t) = (x1, x2, x3 cos t, x3 sin t).
  Eigen::VectorXd A(np), B(np), C(np);
  for (int i = 0; i < np; ++i) {
    A(i) = hull.planes(i, 0) * x(0) + hull.planes(i, 1) * x(1);
    B(i) = -hull.planes(i, 2) * x(2);
    C(i) = -hull.planes(i, 3) * x(2);
  }
  if (hull.flat) {
    // Degenerate hull: the fiber meets a single plane; both orientations are
    // stored, so use the first and pick the root nearest the band.
    const double R = std::hypot(B(0), C(0));
    const double t0 = std::atan2(C(0), B(0));
    const double u = std::clamp(-A(0) / R, -1.0, 1.0);
    const double d = std::acos(u);
    double best = t0 + d, alt = t0 - d;
    auto dist_mid = [&](double t) {
      return std::abs(std::remainder(t - hull.mid_band, kTwoPi));
    };
    if (dist_mid(alt) < dist_mid(best)) best = alt;
    return hull.mid_band + std::remainder(best - hull.mid_band, kTwoPi);
  }
  const auto G = [&](double t) {
    const double ct = std::cos(t), st = std::sin(t);
    return (A.array() + B.array() * ct + C.array() * st).maxCoeff();
  };
  const int N = 2048;
  const double t_lo = hull.mid_band - M_PI, t_hi = hull.mid_band + M_PI;
  int best_i = -1;
  double best_g = std::numeric_limits<double>::infinity();
  std::vector<char> feas(N + 1, 0);
  for (int i = 0; i <= N; ++i) {
    const double t = t_lo + (t_hi - t_lo) * i / N;
    const double g = G(t);
    feas[i] = g <= 1e-9;
    if (g < best_g) {
      best_g = g;
      best_i = i;
    }
  }
  // Largest contiguous feasible run (the fiber meets the hull in an arc).
  int run_a = best_i, run_b = best_i, best_len = feas[best_i] ? 1 : 0;
  for (int i = 0; i <= N;) {
    if (!feas[i]) {
      ++i;
      continue;
    }
    int j = i;
    while (j <= N && feas[j]) ++j;
    if (j - i > best_len) {
      best_len = j - i;
      run_a = i;
      run_b = j - 1;
    }
    i = j;
  }
  const double dt = (t_hi - t_lo) / N;
  auto bisect = [&](double a, double b) {
    // G(a) and G(b) straddle zero.
    for (int it = 0; it < 60 && b - a > 1e-13; ++it) {
      const double mid = 0.5 * (a + b);
      if (G(a) > 0.0 ? G(mid) > 0.0 : G(mid) <= 0.0) {
        a = mid;
      } else {
        b = mid;
      }
    }
    return 0.5 * (a + b);
  };
  if (best_len == 0) {
    // Touching fiber: the hull meets it in (numerically) a single value.
    return t_lo + best_i * dt;
  }
  double lower = t_lo + run_a * dt;
  double upper = t_lo + run_b * dt;
  if (run_a > 0) lower = bisect(lower - dt, lower);
  if (run_b < N) upper = bisect(upper + dt, upper);
  return side == HullSide::Lower ? lower : upper;
}

CosmologicalTimes::CosmologicalTimes(const ExtremalPair& ext, int n_alpha,
                                     int n_phi)
    : na_(n_alpha), nphi_(n_phi) {
  fine_na_ = 193;
  fine_nphi_ = 384;
  fine_lo_.resize(fine_na_, fine_nphi_);
  fine_hi_.resize(fine_na_, fine_nphi_);
  for (int i = 0; i < fine_na_; ++i) {
    const double alpha = M_PI_2 * i / (fine_na_ - 1);
    for (int j = 0; j < fine_nphi_; ++j) {
      const double phi = kTwoPi * j / fine_nphi_;
      fine_lo_(i, j) = ext.lower_at(alpha, phi);
      fine_hi_(i, j) = ext.upper_at(alpha, phi);
    }
  }
}

double CosmologicalTimes::lower_grid(double alpha, double phi) const {
  const double ai = std::clamp(alpha / (M_PI_2 / (fine_na_ - 1)), 0.0,
                               static_cast<double>(fine_na_ - 1));
  double pj = wrap_angle(phi) / (kTwoPi / fine_nphi_);
  const int i0 = std::min(static_cast<int>(ai), fine_na_ - 2);
  const int j0 = static_cast<int>(pj) % fine_nphi_;
  const int j1 = (j0 + 1) % fine_nphi_;
  const double wa = ai - i0, wp = pj - std::floor(pj);
  return (1 - wa) * ((1 - wp) * fine_lo_(i0, j0) + wp * fine_lo_(i0, j1)) +
         wa * ((1 - wp) * fine_lo_(i0 + 1, j0) + wp * fine_lo_(i0 + 1, j1));
}

double CosmologicalTimes::upper_grid(double alpha, double phi) const {
  const double ai = std::clamp(alpha / (M_PI_2 / (fine_na_ - 1)), 0.0,
                               static_cast<double>(fine_na_ - 1));
  double pj = wrap_angle(phi) / (kTwoPi / fine_nphi_);
  const int i0 = std::min(static_cast<int>(ai), fine_na_ - 2);
  const int j0 = static_cast<int>(pj) % fine_nphi_;
  const int j1 = (j0 + 1) % fine_nphi_;
  const double wa = ai - i0, wp = pj - std::floor(pj);
  return (1 - wa) * ((1 - wp) * fine_hi_(i0, j0) + wp * fine_hi_(i0, j1)) +
         wa * ((1 - wp) * fine_hi_(i0 + 1, j0) + wp * fine_hi_(i0 + 1, j1));
}

double CosmologicalTimes::graph_value(double alpha, double phi,
                                      bool past) const {
  return past ? lower_grid(alpha, phi) : upper_grid(alpha, phi);
}

double CosmologicalTimes::sup_distance(const SplitCoord& p, bool past,
                                       double* arg_alpha,
                                       double* arg_phi) const {
  const double p1 = p.x(0), p2 = p.x(1), P3 = p.x(2);
  const double alpha_cap = M_PI_2 - 1e-6;
  const auto dist_to = [&](double alpha, double phi) -> double {
    alpha = std::clamp(alpha, 0.0, alpha_cap);
    const double tq = graph_value(alpha, phi, past);
    const double dt = past ? p.t - tq : tq - p.t;
    if (dt <= 0.0 || dt >= M_PI) return -1.0;
    const double ta = std::tan(alpha), ca = std::cos(alpha);
    const double s = p1 * ta * std::cos(phi) + p2 * ta * std::sin(phi) -
                     P3 / ca * std::cos(p.t - tq);
    if (s <= -1.0 || s >= 1.0) return -1.0;
    return std::acos(-s);
  };
  double best = -1.0, ba = 0.0, bp = 0.0;
  const int sa = std::max(1, (fine_na_ - 1) / (na_ - 1));
  const int sp = std::max(1, fine_nphi_ / nphi_);
  for (int i = 0; i < fine_na_; i += sa) {
    const double alpha = M_PI_2 * i / (fine_na_ - 1);
    for (int j = 0; j < fine_nphi_; j += sp) {
      const double phi = kTwoPi * j / fine_nphi_;
      const double d = dist_to(alpha, phi);
      if (d > best) {
        best = d;
        ba = alpha;
        bp = phi;
      }
    }
  }
  if (best < 0.0) return 0.0;
  double wa = sa * (M_PI_2 / (fine_na_ - 1));
  double wp = sp * (kTwoPi / fine_nphi_);
  for (int it = 0; it < 14; ++it) {
    double nba = ba, nbp = bp;
    for (int i = -2; i <= 2; ++i) {
      for (int j = -2; j <= 2; ++j) {
        const double a = std::clamp(ba + wa * i / 2.0, 0.0, alpha_cap);
        const double f = bp + wp * j / 2.0;
        const double d = dist_to(a, f);
        if (d > best) {
          best = d;
          nba = a;
          nbp = f;
        }
      }
    }
    ba = nba;
    bp = nbp;
    wa *= 0.55;
    wp *= 0.55;
  }
  if (arg_alpha) *arg_alpha = ba;
  if (arg_phi) *arg_phi = bp;
  return best;
}

double CosmologicalTimes::tau(const SplitCoord& p, bool past) const {
  return sup_distance(p, past, nullptr, nullptr);
}

SplitCoord CosmologicalTimes::retraction(const SplitCoord& p, bool past) const {
  double a = 0.0, phi = 0.0;
  sup_distance(p, past, &a, &phi);
  SplitCoord q;
  const double ta = std::tan(a);
  q.x = Vec(3);
  q.x << ta * std::cos(phi), ta * std::sin(phi), 1.0 / std::cos(a);
  q.t = graph_value(a, phi, past);
  return q;
}

double barrier_graph(double theta, BarrierSide side,
                     const CosmologicalTimes& times, const ExtremalPair& ext,
                     const Vec& x, double tol, const double* hint) {
  if (!(theta > 0.0 && theta < M_PI_2)) {
    throw std::invalid_argument("barrier_graph: theta outside (0, pi/2)");
  }
  const bool past = side == BarrierSide::PastBarrier;
  const double target = M_PI_2 - theta;
  const double band_lo = ext.lower(x) + 1e-9;
  const double band_hi = ext.upper(x) - 1e-9;
  // h is increasing in t for the past barrier, decreasing for the future one.
  const auto h = [&](double t) {
    SplitCoord p{x, t};
    const double v = times.tau(p, past) - target;
    return past ? v : -v;
  };
  double a = band_lo, b = band_hi;
  if (hint) {
    const double ha = std::max(band_lo, *hint - 0.15);
    const double hb = std::min(band_hi, *hint + 0.15);
    if (ha < hb && h(ha) < 0.0 && h(hb) > 0.0) {
      a = ha;
      b = hb;
    }
  }
  while (b - a > tol) {
    const double mid = 0.5 * (a + b);
    if (h(mid) < 0.0) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace ads

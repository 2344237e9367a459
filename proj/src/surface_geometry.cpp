#include "adscmc/surface_geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace ads {

namespace {

using Vec4 = Eigen::Vector4d;
using Vec3 = Eigen::Vector3d;

double form22(const Vec4& a, const Vec4& b) {
  return a(0) * b(0) + a(1) * b(1) - a(2) * b(2) - a(3) * b(3);
}

double form21(const Vec3& a, const Vec3& b) {
  return a(0) * b(0) + a(1) * b(1) - a(2) * b(2);
}

// Orthonormal spacelike basis of T_x H^2 (Minkowski orthogonal to x).
void tangent_basis_h2(const Vec3& x, Vec3* e1, Vec3* e2) {
  const double r = std::hypot(x(0), x(1));
  if (r < 1e-14) {
    *e1 = Vec3(1, 0, 0);
    *e2 = Vec3(0, 1, 0);
    return;
  }
  const double c = x(0) / r, s = x(1) / r;
  // Radial direction (boost) and angular direction.
  *e1 = Vec3(x(2) * c, x(2) * s, r);
  *e2 = Vec3(-s, c, 0);
}

// Log map of H^2 at x in the given tangent basis.
Eigen::Vector2d log_map_h2(const Vec3& x, const Vec3& e1, const Vec3& e2,
                           const Vec3& y) {
  const double c = std::max(-form21(x, y), 1.0);
  const double d = std::acosh(c);
  // Tangential component: y + <x,y> x (since <x,x> = -1).
  Vec3 w = y + form21(x, y) * x;
  const double nw = std::sqrt(std::max(form21(w, w), 0.0));
  if (nw < 1e-15) return {0.0, 0.0};
  w *= d / nw;
  return {form21(w, e1), form21(w, e2)};
}

}  // namespace

Mat4 embed_graph(const DiskMesh& mesh, const GraphFunction& u,
                 const SplitChart& chart) {
  if (u.size() != mesh.num_vertices()) {
    throw std::invalid_argument("embed_graph: nodal size mismatch");
  }
  if (chart.n() != 2) {
    throw std::invalid_argument("embed_graph: chart must be n = 2");
  }
  Mat4 F(mesh.num_vertices(), 4);
  const Eigen::Matrix4d Q = chart.frame;
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    const Vec3& x = mesh.vertices[v];
    Vec4 p(x(0), x(1), x(2) * std::cos(u(v)), x(2) * std::sin(u(v)));
    F.row(v) = (Q * p).transpose();
  }
  return F;
}

double SurfaceGeometry::max_interior(
    const DiskMesh& mesh, const std::function<double(int)>& f) const {
  double m = 0.0;
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    if (!mesh.boundary[v]) m = std::max(m, f(v));
  }
  return m;
}

SurfaceGeometry extrinsic_geometry(const DiskMesh& mesh, const GraphFunction& u,
                                   const SplitChart& chart) {
  const int nv = mesh.num_vertices();
  SurfaceGeometry g;
  g.F.resize(nv, 4);
  g.N.resize(nv, 4);
  g.nu.resize(nv);
  g.H.resize(nv);
  g.ii2.resize(nv);
  g.K.resize(nv);
  g.II.assign(nv, Eigen::Matrix2d::Zero());
  g.frames.assign(nv, Eigen::Matrix<double, 4, 2>::Zero());

  // Geometry is chart-equivariant: computed in the standard chart, embedded
  // quantities rotated by the chart frame afterwards.
  const SplitChart std_chart = SplitChart::standard(2);
  const Mat4 F = embed_graph(mesh, u, std_chart);

  for (int v = 0; v < nv; ++v) {
    const Vec3& x = mesh.vertices[v];
    Vec3 e1, e2;
    tangent_basis_h2(x, &e1, &e2);

    // Nodal gradient of u from a weighted quadratic fit in normal coords.
    // Truncated near-boundary 2-rings are widened to the 3-ring so the
    // quartic height fit stays well conditioned.
    std::vector<int> nbrs = mesh.two_ring[v];
    if (nbrs.size() < 18) {
      std::vector<char> seen(nv, 0);
      seen[v] = 1;
      for (int j : nbrs) seen[j] = 1;
      const std::vector<int> base = nbrs;
      for (int j : base)
        for (int k : mesh.one_ring[j])
          if (!seen[k]) {
            seen[k] = 1;
            nbrs.push_back(k);
          }
    }
    if (static_cast<int>(nbrs.size()) < 6) {
      throw std::runtime_error("extrinsic_geometry: degenerate stencil");
    }
    const int m = static_cast<int>(nbrs.size());
    Eigen::MatrixXd Au(m, 5);
    Eigen::VectorXd bu(m), w(m);
    for (int j = 0; j < m; ++j) {
      const Eigen::Vector2d xi =
          log_map_h2(x, e1, e2, mesh.vertices[nbrs[j]]);
      const double d = xi.norm();
      const double wt = 1.0 / (d + 0.25 * mesh.h);
      Au.row(j) << xi(0), xi(1), 0.5 * xi(0) * xi(0), xi(0) * xi(1),
          0.5 * xi(1) * xi(1);
      Au.row(j) *= wt;
      bu(j) = wt * (u(nbrs[j]) - u(v));
      w(j) = wt;
    }
    const Eigen::VectorXd cu =
        (Au.transpose() * Au).ldlt().solve(Au.transpose() * bu);
    const double g1 = cu(0), g2 = cu(1);

    // Surface tangents and the unit future normal.
    const double cu_t = std::cos(u(v)), su_t = std::sin(u(v));
    auto push = [&](const Vec3& vdir, double s) {
      return Vec4(vdir(0), vdir(1), vdir(2) * cu_t - x(2) * su_t * s,
                  vdir(2) * su_t + x(2) * cu_t * s);
    };
    const Vec4 F0 = F.row(v).transpose();
    const Vec4 W1 = push(e1, g1);
    const Vec4 W2 = push(e2, g2);

    // Orthogonal complement of {F0, W1, W2} under the (2,2) form: Euclidean
    // 4D cross product of the form-lowered vectors.
    auto lower = [](Vec4 a) {
      a(2) = -a(2);
      a(3) = -a(3);
      return a;
    };
    const Vec4 la = lower(F0), lb = lower(W1), lc = lower(W2);
    Vec4 Nv;
    for (int col = 0; col < 4; ++col) {
      Eigen::Matrix3d minor;
      int cc = 0;
      for (int col2 = 0; col2 < 4; ++col2) {
        if (col2 == col) continue;
        minor(0, cc) = la(col2);
        minor(1, cc) = lb(col2);
        minor(2, cc) = lc(col2);
        ++cc;
      }
      Nv(col) = ((col % 2) ? -1.0 : 1.0) * minor.determinant();
    }
    const double nn = form22(Nv, Nv);
    if (nn >= 0.0) {
      throw std::runtime_error("extrinsic_geometry: normal not timelike (graph not spacelike)");
    }
    Nv /= std::sqrt(-nn);
    const Vec4 T(0, 0, -su_t, cu_t);  // unit coordinate time direction
    double nu_v = -form22(Nv, T);
    if (nu_v < 0.0) {
      Nv = -Nv;
      nu_v = -nu_v;
    }

    // Orthonormal tangent frame from W1, W2 (Gram-Schmidt in the form).
    Vec4 E1 = W1 / std::sqrt(form22(W1, W1));
    Vec4 E2 = W2 - form22(W2, E1) * E1;
    E2 /= std::sqrt(form22(E2, E2));

    // Second fundamental form: polynomial fit of the normal height
    // c = -<F_j, N> over tangent coordinates (a, b); II is its Hessian at 0.
    const bool cubic = m >= 12;
    const bool quartic = m >= 15;
    const int terms = quartic ? 14 : cubic ? 9 : 5;
    Eigen::MatrixXd Ac(m, terms);
    Eigen::VectorXd bc(m);
    for (int j = 0; j < m; ++j) {
      const Vec4 Fj = F.row(nbrs[j]).transpose();
      // Geodesic log-map coordinates: w = d (Fj - cosh d F0)/sinh d is the
      // initial velocity of the ambient geodesic from F0 to Fj. Projecting
      // the chord Fj itself instead introduces a |w|^2/6 relative error in
      // the heights, which dominates the quadratic fit.
      const double ch = std::max(-form22(Fj, F0), 1.0);
      const double d = std::acosh(ch);
      const double scale = d > 1e-12 ? d / std::sinh(d) : 1.0;
      const Vec4 w4 = scale * (Fj - ch * F0);
      const double a = form22(w4, E1) / mesh.h;
      const double b = form22(w4, E2) / mesh.h;
      const double c = -form22(w4, Nv);
      const double wt = w(j);
      int t = 0;
      Ac(j, t++) = a;
      Ac(j, t++) = b;
      Ac(j, t++) = 0.5 * a * a;
      Ac(j, t++) = a * b;
      Ac(j, t++) = 0.5 * b * b;
      if (cubic) {
        Ac(j, t++) = a * a * a;
        Ac(j, t++) = a * a * b;
        Ac(j, t++) = a * b * b;
        Ac(j, t++) = b * b * b;
      }
      if (quartic) {
        Ac(j, t++) = a * a * a * a;
        Ac(j, t++) = a * a * a * b;
        Ac(j, t++) = a * a * b * b;
        Ac(j, t++) = a * b * b * b;
        Ac(j, t++) = b * b * b * b;
      }
      Ac.row(j) *= wt;
      bc(j) = wt * c;
    }
    const Eigen::VectorXd cc2 =
        (Ac.transpose() * Ac).ldlt().solve(Ac.transpose() * bc);
    Eigen::Matrix2d II;
    const double s = 1.0 / (mesh.h * mesh.h);
    II << cc2(2) * s, cc2(3) * s, cc2(3) * s, cc2(4) * s;

    g.F.row(v) = F.row(v);
    g.N.row(v) = Nv.transpose();
    g.nu(v) = nu_v;
    g.II[v] = II;
    g.H(v) = II.trace();
    g.ii2(v) = II.squaredNorm();
    g.K(v) = -1.0 - II.determinant();
    g.frames[v].col(0) = E1;
    g.frames[v].col(1) = E2;
  }

  // Rotate embedded quantities into the requested chart.
  if (!chart.frame.isIdentity(0.0)) {
    const Eigen::Matrix4d Q = chart.frame;
    g.F = (Q * g.F.transpose()).transpose();
    g.N = (Q * g.N.transpose()).transpose();
    for (auto& fr : g.frames) fr = Q * fr;
  }
  return g;
}

double induced_edge_length(const Eigen::RowVector4d& a,
                           const Eigen::RowVector4d& b) {
  const double c = a(2) * b(2) + a(3) * b(3) - a(0) * b(0) - a(1) * b(1);
  return std::acosh(std::max(c, 1.0));
}

Eigen::VectorXd sectional_curvature_check(const DiskMesh& mesh,
                                          const SurfaceGeometry& geom) {
  const int nv = mesh.num_vertices();
  Eigen::VectorXd res = Eigen::VectorXd::Zero(nv);
  // Comparison angle in curvature -1 from side lengths.
  auto angle = [](double a, double b, double c) {
    const double num = std::cosh(b) * std::cosh(c) - std::cosh(a);
    const double den = std::sinh(b) * std::sinh(c);
    return std::acos(std::clamp(num / den, -1.0, 1.0));
  };
  // Intrinsic arc length of an edge. The ambient geodesic chord exceeds the
  // arc by chord^3 kappa^2 / 24 (the curvature vector II(T,T) N is timelike),
  // and the correction is the same order as the curvature signal, so the
  // comparison angles must use the corrected lengths.
  auto arc = [&](int p, int q) {
    const double chord = induced_edge_length(geom.F.row(p), geom.F.row(q));
    auto normal_curv = [&](int at, int other) {
      const Eigen::Vector4d d =
          (geom.F.row(other) - geom.F.row(at)).transpose();
      Eigen::Vector2d e(form22(d, geom.frames[at].col(0)),
                        form22(d, geom.frames[at].col(1)));
      const double n = e.norm();
      if (n < 1e-300) return 0.0;
      e /= n;
      return e.dot(geom.II[at] * e);
    };
    const double kappa = 0.5 * (normal_curv(p, q) + normal_curv(q, p));
    return chord - chord * chord * chord * kappa * kappa / 24.0;
  };
  for (int v = 0; v < nv; ++v) {
    if (mesh.boundary[v]) continue;
    double angle_sum = 0.0, area = 0.0;
    for (int ti : mesh.vertex_triangles[v]) {
      const auto& t = mesh.triangles[ti];
      int iv = 0;
      while (t[iv] != v) ++iv;
      const int p = t[iv], q = t[(iv + 1) % 3], r = t[(iv + 2) % 3];
      const double a = arc(q, r);
      const double b = arc(p, q);
      const double c = arc(p, r);
      const double A = angle(a, b, c);
      const double B = angle(c, a, b);
      const double C = angle(b, c, a);
      angle_sum += A;
      area += M_PI - (A + B + C);  // hyperbolic excess
    }
    // Comparison-angle estimate of the intrinsic curvature around v.
    const double K_intrinsic = -1.0 - 3.0 * (angle_sum - 2.0 * M_PI) /
                                          std::max(area, 1e-300);
    res(v) = K_intrinsic - geom.K(v);
  }
  return res;
}

double spacelike_margin(const DiskMesh& mesh, const GraphFunction& u) {
  double margin = 1.0;
  for (const auto& t : mesh.triangles) {
    // Flatten at the first vertex and solve the linear interpolant gradient.
    const Vec3& x = mesh.vertices[t[0]];
    Vec3 e1, e2;
    tangent_basis_h2(x, &e1, &e2);
    const Eigen::Vector2d p1 = log_map_h2(x, e1, e2, mesh.vertices[t[1]]);
    const Eigen::Vector2d p2 = log_map_h2(x, e1, e2, mesh.vertices[t[2]]);
    Eigen::Matrix2d M;
    M.row(0) = p1.transpose();
    M.row(1) = p2.transpose();
    const Eigen::Vector2d rhs(u(t[1]) - u(t[0]), u(t[2]) - u(t[0]));
    const Eigen::Vector2d grad = M.fullPivLu().solve(rhs);
    const double centroid_cosh =
        (mesh.vertices[t[0]](2) + mesh.vertices[t[1]](2) +
         mesh.vertices[t[2]](2)) /
        3.0;
    const double conf2 = centroid_cosh * centroid_cosh * grad.squaredNorm();
    margin = std::min(margin, 1.0 - conf2);
  }
  return margin;
}

CotanOperator build_cotan_operator(const DiskMesh& mesh, const Mat4& F) {
  const int nv = mesh.num_vertices();
  CotanOperator op;
  op.area = Eigen::VectorXd::Zero(nv);
  std::vector<Eigen::Triplet<double>> trips;
  for (const auto& t : mesh.triangles) {
    const double l0 = induced_edge_length(F.row(t[1]), F.row(t[2]));
    const double l1 = induced_edge_length(F.row(t[2]), F.row(t[0]));
    const double l2 = induced_edge_length(F.row(t[0]), F.row(t[1]));
    // Euclidean flattening of the induced lengths.
    const double s = 0.5 * (l0 + l1 + l2);
    const double A = std::sqrt(
        std::max(s * (s - l0) * (s - l1) * (s - l2), 1e-300));
    const double cot0 = (l1 * l1 + l2 * l2 - l0 * l0) / (4.0 * A);
    const double cot1 = (l2 * l2 + l0 * l0 - l1 * l1) / (4.0 * A);
    const double cot2 = (l0 * l0 + l1 * l1 - l2 * l2) / (4.0 * A);
    const double half[3] = {0.5 * cot0, 0.5 * cot1, 0.5 * cot2};
    const int opp[3][2] = {{t[1], t[2]}, {t[2], t[0]}, {t[0], t[1]}};
    for (int e = 0; e < 3; ++e) {
      const int i = opp[e][0], j = opp[e][1];
      trips.emplace_back(i, j, half[e]);
      trips.emplace_back(j, i, half[e]);
      trips.emplace_back(i, i, -half[e]);
      trips.emplace_back(j, j, -half[e]);
    }
    for (int e = 0; e < 3; ++e) op.area(t[e]) += A / 3.0;
  }
  op.stiffness.resize(nv, nv);
  op.stiffness.setFromTriplets(trips.begin(), trips.end());
  return op;
}

}  // namespace ads

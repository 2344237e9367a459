#include "adscmc/solver.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace ads {

namespace {

constexpr double kPi = 3.14159265358979323846;

SplitChart graph_chart() { return SplitChart::standard(2); }

// Pointwise Laplace-Beltrami of nodal values by a weighted least-squares
// quadratic fit in the surface tangent coordinates (ambient log map projected
// onto the orthonormal frame). The lumped cotan Laplacian is only weakly
// consistent and its pointwise values carry O(1) errors on irregular meshes.
double lsq_laplacian_at(const DiskMesh& mesh, const SurfaceGeometry& geom,
                        const Eigen::VectorXd& v, int i) {
  auto form22 = [](const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
    return a(0) * b(0) + a(1) * b(1) - a(2) * b(2) - a(3) * b(3);
  };
  std::vector<int> nbrs = mesh.two_ring[i];
  if (nbrs.size() < 12) {
    std::vector<char> seen(mesh.num_vertices(), 0);
    seen[i] = 1;
    for (int j : nbrs) seen[j] = 1;
    const std::vector<int> base = nbrs;
    for (int j : base)
      for (int k : mesh.one_ring[j])
        if (!seen[k]) {
          seen[k] = 1;
          nbrs.push_back(k);
        }
  }
  const int m = static_cast<int>(nbrs.size());
  const Eigen::Vector4d F0 = geom.F.row(i).transpose();
  const bool cubic = m >= 12;
  const int terms = cubic ? 9 : 5;
  Eigen::MatrixXd A(m, terms);
  Eigen::VectorXd b(m);
  for (int j = 0; j < m; ++j) {
    const Eigen::Vector4d Fj = geom.F.row(nbrs[j]).transpose();
    const double ch = std::max(-form22(Fj, F0), 1.0);
    const double d = std::acosh(ch);
    const double scale = d > 1e-12 ? d / std::sinh(d) : 1.0;
    const Eigen::Vector4d w4 = scale * (Fj - ch * F0);
    const double a = form22(w4, geom.frames[i].col(0)) / mesh.h;
    const double c = form22(w4, geom.frames[i].col(1)) / mesh.h;
    const double wt = 1.0 / (std::hypot(a, c) + 0.25);
    int t = 0;
    A(j, t++) = a;
    A(j, t++) = c;
    A(j, t++) = 0.5 * a * a;
    A(j, t++) = a * c;
    A(j, t++) = 0.5 * c * c;
    if (cubic) {
      A(j, t++) = a * a * a;
      A(j, t++) = a * a * c;
      A(j, t++) = a * c * c;
      A(j, t++) = c * c * c;
    }
    A.row(j) *= wt;
    b(j) = wt * (v(nbrs[j]) - v(i));
  }
  const Eigen::VectorXd cc =
      (A.transpose() * A).ldlt().solve(A.transpose() * b);
  return (cc(2) + cc(4)) / (mesh.h * mesh.h);
}

double interior_residual(const DiskMesh& mesh, const SurfaceGeometry& geom,
                         double H_target) {
  double r = 0.0;
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    if (mesh.boundary[v]) continue;
    r = std::max(r, std::abs(geom.H(v) - H_target));
  }
  return r;
}

// Solves J v = -r with Dirichlet v = 0 on the boundary, where
// (J v)_i = (S v)_i / A_i - (n + |II|^2)_i v_i. The system is assembled as
// the positive definite diag(A (n + |II|^2)) - S.
Eigen::VectorXd newton_correction(const DiskMesh& mesh,
                                  const SurfaceGeometry& geom,
                                  double H_target) {
  const CotanOperator op = build_cotan_operator(mesh, geom.F);
  const int nv = mesh.num_vertices();
  std::vector<int> index(nv, -1);
  std::vector<int> interior;
  for (int v = 0; v < nv; ++v) {
    if (!mesh.boundary[v]) {
      index[v] = static_cast<int>(interior.size());
      interior.push_back(v);
    }
  }
  const int ni = static_cast<int>(interior.size());
  std::vector<Eigen::Triplet<double>> trip;
  for (int k = 0; k < op.stiffness.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(op.stiffness, k); it;
         ++it) {
      const int i = index[static_cast<int>(it.row())];
      const int j = index[static_cast<int>(it.col())];
      if (i >= 0 && j >= 0) trip.emplace_back(i, j, -it.value());
    }
  }
  Eigen::VectorXd rhs(ni);
  for (int i = 0; i < ni; ++i) {
    const int v = interior[i];
    trip.emplace_back(i, i, op.area(v) * (2.0 + geom.ii2(v)));
    rhs(i) = op.area(v) * (geom.H(v) - H_target);
  }
  Eigen::SparseMatrix<double> P(ni, ni);
  P.setFromTriplets(trip.begin(), trip.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> chol(P);
  if (chol.info() != Eigen::Success)
    throw std::runtime_error("newton_solve: linear solve failed");
  const Eigen::VectorXd vi = chol.solve(rhs);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(nv);
  for (int i = 0; i < ni; ++i) v(interior[i]) = vi(i);
  return v;
}

// Vertical perturbation equivalent to the normal perturbation v.
Eigen::VectorXd to_vertical(const DiskMesh& mesh, const SurfaceGeometry& geom,
                            const Eigen::VectorXd& v) {
  Eigen::VectorXd du(v.size());
  for (int i = 0; i < v.size(); ++i)
    du(i) = v(i) / (mesh.vertices[i](2) * geom.nu(i));
  return du;
}

Eigen::Vector2d disc_of(const Eigen::Vector3d& x) {
  return Eigen::Vector2d(x(0), x(1)) / (1.0 + x(2));
}

}  // namespace

void SolverConfig::validate() const {
  if (!(tol_residual > 0 && tol_geom > 0 && tol_exhaust > 0 && h > 0))
    throw std::invalid_argument("solver config: tolerances must be positive");
  if (!(newton_damping > 0 && newton_damping <= 1))
    throw std::invalid_argument("solver config: damping outside (0, 1]");
  if (!(delta_space > 0 && flow_dt > 0))
    throw std::invalid_argument("solver config: bad flow parameters");
  for (size_t i = 1; i < radii.size(); ++i)
    if (radii[i] <= radii[i - 1])
      throw std::invalid_argument("solver config: radii must increase");
}

double CmcSolution::max_residual() const {
  return interior_residual(mesh, geom, H_target);
}

GraphFunction mcf_step(const DiskMesh& mesh, const GraphFunction& u,
                       const SolverConfig& config, bool* stalled) {
  if (stalled) *stalled = false;
  const SplitChart chart = graph_chart();
  const SurfaceGeometry geom = extrinsic_geometry(mesh, u, chart);
  Eigen::VectorXd v(mesh.num_vertices());
  for (int i = 0; i < mesh.num_vertices(); ++i)
    v(i) = mesh.boundary[i] ? 0.0 : geom.H(i) - config.H_target;
  const Eigen::VectorXd du = to_vertical(mesh, geom, v);
  double dt = config.flow_dt;
  while (dt > 1e-14) {
    GraphFunction next = u + dt * du;
    if (spacelike_margin(mesh, next) >= config.delta_space) return next;
    dt *= 0.5;
  }
  if (stalled) *stalled = true;
  return u;
}

CmcSolution newton_solve(const DiskMesh& mesh, GraphFunction u0,
                         const GraphFunction& g, const SolverConfig& config) {
  config.validate();
  const SplitChart chart = graph_chart();
  CmcSolution sol;
  sol.mesh = mesh;
  sol.H_target = config.H_target;
  GraphFunction u = u0;
  for (int v = 0; v < mesh.num_vertices(); ++v)
    if (mesh.boundary[v]) u(v) = g(v);
  if (spacelike_margin(mesh, u) < config.delta_space)
    throw std::invalid_argument("newton_solve: initial guess not spacelike");

  SurfaceGeometry geom = extrinsic_geometry(mesh, u, chart);
  double res = interior_residual(mesh, geom, config.H_target);
  sol.residual_history.push_back(res);
  for (int it = 0; it < config.max_newton && res > config.tol_residual; ++it) {
    const Eigen::VectorXd v = newton_correction(mesh, geom, config.H_target);
    const Eigen::VectorXd du = to_vertical(mesh, geom, v);
    double step = config.newton_damping;
    bool accepted = false;
    for (int trial = 0; trial < 16; ++trial, step *= 0.5) {
      GraphFunction cand = u + step * du;
      if (spacelike_margin(mesh, cand) < config.delta_space) continue;
      try {
        SurfaceGeometry cand_geom = extrinsic_geometry(mesh, cand, chart);
        const double cand_res =
            interior_residual(mesh, cand_geom, config.H_target);
        if (cand_res < res) {
          u = std::move(cand);
          geom = std::move(cand_geom);
          res = cand_res;
          accepted = true;
          break;
        }
      } catch (const std::exception&) {
        // degenerate trial surface; shorten the step
      }
    }
    if (!accepted) break;
    sol.residual_history.push_back(res);
  }
  sol.u = std::move(u);
  sol.geom = std::move(geom);
  sol.converged = res <= config.tol_residual;
  return sol;
}

double linearization_check(const DiskMesh& mesh, const GraphFunction& u,
                           const GraphFunction& v, double eps) {
  if (!(eps > 0)) throw std::invalid_argument("linearization_check: eps <= 0");
  const SplitChart chart = graph_chart();
  const SurfaceGeometry geom = extrinsic_geometry(mesh, u, chart);
  const int nv = mesh.num_vertices();

  // Normal graph S_{eps v}: move each vertex along the unit-speed normal
  // geodesic, then lift back to split coordinates over a deformed base mesh.
  DiskMesh def = mesh;
  GraphFunction ud(nv);
  for (int i = 0; i < nv; ++i) {
    const double a = eps * v(i);
    Vec p = std::cos(a) * geom.F.row(i).transpose() +
            std::sin(a) * geom.N.row(i).transpose();
    const SplitCoord c = split_lift(QuadricPoint(p), chart, u(i));
    def.vertices[i] = c.x.head<3>();
    def.disc[i] = disc_of(def.vertices[i]);
    ud(i) = c.t;
  }
  if (spacelike_margin(def, ud) <= 0)
    throw std::runtime_error("linearization_check: spacelike loss at eps");
  const SurfaceGeometry pert = extrinsic_geometry(def, ud, chart);

  double num = 0.0, den = 0.0;
  for (int i = 0; i < nv; ++i) {
    if (mesh.boundary[i]) continue;
    const double fd = (pert.H(i) - geom.H(i)) / eps;
    const double jv =
        lsq_laplacian_at(mesh, geom, v, i) - (2.0 + geom.ii2(i)) * v(i);
    num = std::max(num, std::abs(fd - jv));
    den = std::max(den, std::abs(jv));
  }
  return num / std::max(den, 1e-300);
}

double carrier_value(const InvisibleDomain& dom, double H_target,
                     const SolverConfig& config, const Eigen::Vector3d& x,
                     CarrierHint* hint) {
  // 1e-4 fiber accuracy is ample for initial guesses and Dirichlet traces:
  // the Newton solve resolves the surface, and the maximum principle bounds
  // the induced solution error by the trace error.
  Vec xv = x;
  if (H_target == 0.0) {
    const double wp = barrier_graph(
        M_PI / 4, BarrierSide::PastBarrier, dom.times, dom.ext, xv, 1e-4,
        hint && hint->have ? &hint->past : nullptr);
    const double wf = barrier_graph(
        M_PI / 4, BarrierSide::FutureBarrier, dom.times, dom.ext, xv, 1e-4,
        hint && hint->have ? &hint->future : nullptr);
    if (hint) {
      hint->past = wp;
      hint->future = wf;
      hint->have = true;
    }
    return 0.5 * (wp + wf);
  }
  const double theta =
      std::atan(std::abs(H_target) / 2.0) + config.barrier_margin;
  const BarrierSide side =
      H_target > 0 ? BarrierSide::PastBarrier : BarrierSide::FutureBarrier;
  const double w = barrier_graph(theta, side, dom.times, dom.ext, xv, 1e-4,
                                 hint && hint->have ? &hint->past : nullptr);
  if (hint) {
    hint->past = w;
    hint->have = true;
  }
  return w;
}

CmcSolution exhaustion_solve(const BoundaryData& f, double H_target,
                             const SolverConfig& config,
                             const InvisibleDomain* shared) {
  config.validate();
  if (!is_admissible(f))
    throw std::invalid_argument("exhaustion_solve: boundary not admissible");
  if (config.radii.empty())
    throw std::invalid_argument("exhaustion_solve: empty radii schedule");
  std::unique_ptr<InvisibleDomain> own;
  if (!shared) {
    own = std::make_unique<InvisibleDomain>(f);
    shared = own.get();
  }
  SolverConfig cfg = config;
  cfg.H_target = H_target;

  CmcSolution sol;
  bool have_prev = false;
  DiskMesh prev_mesh;
  GraphFunction prev_u;
  double prev_r = 0.0;
  std::vector<double> cauchy;
  bool cauchy_ok = false;

  for (double r : config.radii) {
    DiskMesh mesh = build_mesh(r, config.h);
    const int nv = mesh.num_vertices();
    GraphFunction g = GraphFunction::Zero(nv);
    GraphFunction u0(nv);
    CarrierHint hint;
    for (int v = 0; v < nv; ++v) {
      bool need_carrier = true;
      if (have_prev && !mesh.boundary[v]) {
        bool inside = false;
        const double val =
            interpolate_graph(prev_mesh, prev_u, mesh.disc[v], &inside);
        if (inside) {
          u0(v) = val;
          need_carrier = false;
        }
      }
      if (need_carrier) {
        u0(v) = carrier_value(*shared, H_target, cfg, mesh.vertices[v], &hint);
      }
      if (mesh.boundary[v]) g(v) = u0(v);
    }
    // Scale the interior toward the strictly spacelike H = 0 carrier if the
    // interpolated / carrier guess grazes the light cone.
    GraphFunction safe;
    for (int k = 0; k < 25 && spacelike_margin(mesh, u0) < cfg.delta_space;
         ++k) {
      if (safe.size() == 0) {
        safe.resize(nv);
        CarrierHint sh;
        for (int v = 0; v < nv; ++v)
          safe(v) = carrier_value(*shared, 0.0, cfg, mesh.vertices[v], &sh);
      }
      for (int v = 0; v < nv; ++v) {
        if (mesh.boundary[v]) continue;
        u0(v) = safe(v) + 0.8 * (u0(v) - safe(v));
      }
    }
    sol = newton_solve(mesh, u0, g, cfg);
    if (have_prev) {
      double diff = 0.0;
      for (int v = 0; v < nv; ++v) {
        if (mesh.hyperbolic_radius_of(v) > 0.5 * r) continue;
        bool inside = false;
        const double val =
            interpolate_graph(prev_mesh, prev_u, mesh.disc[v], &inside);
        if (inside) diff = std::max(diff, std::abs(sol.u(v) - val));
      }
      cauchy.push_back(diff);
      if (sol.converged && diff <= config.tol_exhaust) {
        cauchy_ok = true;
        sol.cauchy_history = cauchy;
        return sol;
      }
    }
    prev_mesh = sol.mesh;
    prev_u = sol.u;
    prev_r = r;
    have_prev = true;
  }
  (void)prev_r;
  (void)cauchy_ok;
  sol.cauchy_history = cauchy;
  return sol;
}

BarrierReport barrier_verify(const CmcSolution& sol, const BoundaryData& f,
                             double H_target, double tol,
                             const InvisibleDomain* shared) {
  BarrierReport rep;
  rep.pass = true;
  if (H_target == 0.0) {
    rep.check = "convex hull sandwich";
    const ConvexHullModel hull = convex_hull_build(f);
    for (int v = 0; v < sol.mesh.num_vertices(); ++v) {
      if (sol.mesh.boundary[v]) continue;
      Vec xv = sol.mesh.vertices[v];
      const double lo = ch_boundary_value(xv, hull, HullSide::Lower);
      const double hi = ch_boundary_value(xv, hull, HullSide::Upper);
      const double viol =
          std::max(lo - sol.u(v) - tol, sol.u(v) - hi - tol);
      if (viol > rep.worst_violation) {
        rep.worst_violation = viol;
        rep.worst_vertex = v;
      }
    }
  } else {
    rep.check = H_target > 0 ? "past cosmological time bound"
                             : "future cosmological time bound";
    std::unique_ptr<InvisibleDomain> own;
    if (!shared) {
      own = std::make_unique<InvisibleDomain>(f);
      shared = own.get();
    }
    const double theta = std::atan(std::abs(H_target) / 2.0);
    const bool past = H_target > 0;
    for (int v = 0; v < sol.mesh.num_vertices(); ++v) {
      if (sol.mesh.boundary[v]) continue;
      SplitCoord p;
      p.x = sol.mesh.vertices[v];
      p.t = sol.u(v);
      const double tau = shared->times.tau(p, past);
      const double viol = tau - (0.5 * kPi - theta) - tol;
      if (viol > rep.worst_violation) {
        rep.worst_violation = viol;
        rep.worst_vertex = v;
      }
    }
  }
  rep.pass = rep.worst_violation <= 0.0;
  if (rep.worst_vertex < 0) rep.worst_violation = 0.0;
  return rep;
}

bool ordering_verify(const CmcSolution& s1, const CmcSolution& s2,
                     double slack, double* min_gap) {
  if (s1.mesh.num_vertices() != s2.mesh.num_vertices())
    throw std::invalid_argument("ordering_verify: meshes differ");
  double gap = std::numeric_limits<double>::infinity();
  for (int v = 0; v < s1.mesh.num_vertices(); ++v) {
    if (s1.mesh.boundary[v]) continue;
    gap = std::min(gap, s2.u(v) - s1.u(v));
  }
  if (min_gap) *min_gap = gap;
  return gap > -slack;
}

}  // namespace ads

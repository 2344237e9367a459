// Dirichlet solver for prescribed constant mean curvature graphs: mean
// curvature flow relaxation, damped Newton with the J = Delta - (n + |II|^2)
// linearization, a finite-difference linearization check, the exhaustion
// procedure over growing radii, and barrier / ordering verification.

#ifndef ADSCMC_SOLVER_HPP_
#define ADSCMC_SOLVER_HPP_

#include "adscmc/boundary.hpp"
#include "adscmc/surface_geometry.hpp"

namespace ads {

struct SolverConfig {
  double H_target = 0.0;
  double tol_residual = 1e-8;  // Newton stopping: nodal max |H - H_target|
  double tol_geom = 5e-3;      // accuracy claimed by the converged flag
  double newton_damping = 1.0;
  int max_newton = 150;
  double flow_dt = 2e-3;
  int max_flow_steps = 20000;
  double delta_space = 1e-3;  // minimum spacelike margin of any iterate
  std::vector<double> radii = {1.0, 1.5, 2.0, 2.5, 3.0};
  double tol_exhaust = 1e-4;  // Cauchy criterion on the inner half ball
  double h = 0.1;             // target mesh edge length
  double barrier_margin = 0.05;

  void validate() const;
};

struct CmcSolution {
  DiskMesh mesh;
  GraphFunction u;
  SurfaceGeometry geom;
  std::vector<double> residual_history;
  std::vector<double> cauchy_history;  // exhaustion inner-ball differences
  bool converged = false;
  double H_target = 0.0;

  double max_residual() const;  // max interior |H - H_target|
};

// One explicit flow step u' = u + dt (H(u) - H_target) / (cosh(rho) nu),
// the normal flow projected to the vertical graph direction. Halves dt when
// the spacelike margin would drop below delta_space; sets *stalled on dt
// underflow. Boundary values are kept fixed.
GraphFunction mcf_step(const DiskMesh& mesh, const GraphFunction& u,
                       const SolverConfig& config, bool* stalled = nullptr);

// Damped Newton for H(u) = H_target with Dirichlet data g (read at boundary
// vertices). The linearization acts on normal perturbations v:
// Jv = Delta_Sigma v - (n + |II|^2) v, assembled with the induced cotan
// Laplacian; the correction enters vertically as v / (cosh(rho) nu).
CmcSolution newton_solve(const DiskMesh& mesh, GraphFunction u0,
                         const GraphFunction& g, const SolverConfig& config);

// Compares (H(S_{eps v}) - H(S_0)) / eps against Jv in the interior max norm,
// where S_{eps v} = cos(eps v) F + sin(eps v) N is the normal graph of eps v.
// Returns the relative error.
double linearization_check(const DiskMesh& mesh, const GraphFunction& u,
                           const GraphFunction& v, double eps);

// Cached extremal extensions and cosmological times of Omega(Lambda); shared
// between exhaustion stages and foliation leaves.
struct InvisibleDomain {
  ExtremalPair ext;
  CosmologicalTimes times;
  explicit InvisibleDomain(const BoundaryData& f) : ext(f), times(ext) {}
};

// Bisection bracket hints chained along a vertex sweep.
struct CarrierHint {
  bool have = false;
  double past = 0.0;
  double future = 0.0;
};

// Carrier graph of the exhaustion: the barrier level set at
// theta = arctan(|H|/n) + margin on the side matching the sign of H. For
// H = 0 it is the midsurface of the theta = pi/4 barrier pair; the extremal
// midpoint (u+ + u-)/2 is null wherever the retraction directions of the two
// extensions align, while strict spacelikeness is convex, so averaging two
// strictly spacelike barrier graphs is safe. Evaluated per vertex.
double carrier_value(const InvisibleDomain& dom, double H_target,
                     const SolverConfig& config, const Eigen::Vector3d& x,
                     CarrierHint* hint = nullptr);

// Solves the Dirichlet problem on each ball of the radii schedule with the
// carrier trace as boundary data, warm-starting from the previous stage;
// converged when the interior change on the inner half ball drops below
// tol_exhaust. The final-stage mesh and solution are returned.
CmcSolution exhaustion_solve(const BoundaryData& f, double H_target,
                             const SolverConfig& config,
                             const InvisibleDomain* shared = nullptr);

struct BarrierReport {
  bool pass = false;
  int worst_vertex = -1;
  double worst_violation = 0.0;  // positive means a violated margin
  std::string check;
};

// H != 0: asserts the cosmological time bound tau <= pi/2 - arctan(|H|/n)
// + tol on interior vertices (past time for H > 0, future for H < 0).
// H = 0: asserts the convex hull sandwich lower - tol <= u <= upper + tol.
BarrierReport barrier_verify(const CmcSolution& sol, const BoundaryData& f,
                             double H_target, double tol = 5e-3,
                             const InvisibleDomain* shared = nullptr);

// Strict pointwise ordering u1 < u2 at interior vertices for H1 > H2
// (tolerance -slack at coarse resolution). Both solutions share a mesh.
bool ordering_verify(const CmcSolution& s1, const CmcSolution& s2,
                     double slack = 1e-6, double* min_gap = nullptr);

}  // namespace ads

#endif  // ADSCMC_SOLVER_HPP_

#include "adscmc/foliation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ads {

int CmcFamily::index_of(double H) const {
  for (int i = 0; i < size(); ++i)
    if (H_grid[i] == H) return i;
  return -1;
}

namespace {

// Dirichlet trace of the carrier of leaf H on the shared mesh boundary.
GraphFunction carrier_trace(const InvisibleDomain& dom, double H,
                            const SolverConfig& config, const DiskMesh& mesh) {
  GraphFunction g = GraphFunction::Zero(mesh.num_vertices());
  CarrierHint hint;
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    if (!mesh.boundary[v]) continue;
    g(v) = carrier_value(dom, H, config, mesh.vertices[v], &hint);
  }
  return g;
}

}  // namespace

CmcFamily solve_family(const BoundaryData& f, std::vector<double> H_grid,
                       const SolverConfig& config) {
  if (H_grid.empty()) throw std::invalid_argument("solve_family: empty grid");
  std::sort(H_grid.begin(), H_grid.end());
  H_grid.erase(std::unique(H_grid.begin(), H_grid.end()), H_grid.end());

  const InvisibleDomain dom(f);
  const int n = static_cast<int>(H_grid.size());
  int i0 = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(H_grid[i]) < std::abs(H_grid[i0])) i0 = i;

  CmcFamily fam{H_grid, {}, f};
  fam.solutions.resize(n);
  fam.solutions[i0] = exhaustion_solve(f, H_grid[i0], config, &dom);
  if (!fam.solutions[i0].converged)
    throw std::runtime_error("solve_family: root leaf did not converge");
  const DiskMesh& mesh = fam.solutions[i0].mesh;

  auto solve_leaf = [&](int i, int from) {
    SolverConfig cfg = config;
    cfg.H_target = H_grid[i];
    const GraphFunction g = carrier_trace(dom, H_grid[i], cfg, mesh);
    // Warm start from the neighbor leaf, spreading the boundary-trace
    // mismatch over a radial collar: applying it in a single mesh layer can
    // push the guess across the light cone.
    GraphFunction u0 = fam.solutions[from].u;
    std::vector<std::pair<double, double>> offsets;  // (angle, delta)
    for (int v = 0; v < mesh.num_vertices(); ++v)
      if (mesh.boundary[v])
        offsets.emplace_back(
            std::atan2(mesh.vertices[v](1), mesh.vertices[v](0)),
            g(v) - u0(v));
    std::sort(offsets.begin(), offsets.end());
    const auto offset_at = [&](double ang) {
      const int m = static_cast<int>(offsets.size());
      auto it = std::lower_bound(offsets.begin(), offsets.end(),
                                 std::make_pair(ang, -1e300));
      const int j1 = static_cast<int>(it - offsets.begin()) % m;
      const int j0 = (j1 + m - 1) % m;
      double span = offsets[j1].first - offsets[j0].first;
      double w = ang - offsets[j0].first;
      if (span <= 0) span += 2 * M_PI;
      if (w < 0) w += 2 * M_PI;
      const double s = span > 0 ? w / span : 0.0;
      return (1 - s) * offsets[j0].second + s * offsets[j1].second;
    };
    const double W = std::min(1.0, 0.5 * mesh.R);
    for (int v = 0; v < mesh.num_vertices(); ++v) {
      const double rho = mesh.hyperbolic_radius_of(v);
      if (rho < mesh.R - W) continue;
      const double s = std::min(1.0, (rho - (mesh.R - W)) / W);
      u0(v) += s * s * (3 - 2 * s) *
               offset_at(std::atan2(mesh.vertices[v](1), mesh.vertices[v](0)));
    }
    for (int v = 0; v < mesh.num_vertices(); ++v)
      if (mesh.boundary[v]) u0(v) = g(v);
    GraphFunction safe;
    for (int k = 0; k < 25 && spacelike_margin(mesh, u0) < cfg.delta_space;
         ++k) {
      if (safe.size() == 0) {
        safe.resize(mesh.num_vertices());
        CarrierHint sh;
        for (int v = 0; v < mesh.num_vertices(); ++v)
          safe(v) = carrier_value(dom, 0.0, cfg, mesh.vertices[v], &sh);
      }
      for (int v = 0; v < mesh.num_vertices(); ++v) {
        if (mesh.boundary[v]) continue;
        u0(v) = safe(v) + 0.8 * (u0(v) - safe(v));
      }
    }
    fam.solutions[i] = newton_solve(mesh, u0, g, cfg);
    if (!fam.solutions[i].converged)
      throw std::runtime_error("solve_family: leaf did not converge");
  };
  for (int i = i0 + 1; i < n; ++i) solve_leaf(i, i - 1);
  for (int i = i0 - 1; i >= 0; --i) solve_leaf(i, i + 1);

  for (int i = 0; i + 1 < n; ++i) {
    double gap = 0.0;
    if (!ordering_verify(fam.solutions[i + 1], fam.solutions[i], 1e-6, &gap))
      throw std::runtime_error("solve_family: adjacent leaves out of order");
  }
  return fam;
}

namespace {

double invert_monotone(const CmcFamily& family, const Eigen::VectorXd& val,
                       double t) {
  const int n = family.size();
  if (!(t <= val(0) && t >= val(n - 1)))
    throw std::out_of_range("cmc_time: t outside the covered band");
  for (int i = 0; i + 1 < n; ++i) {
    if (t <= val(i) && t >= val(i + 1)) {
      const double dv = val(i + 1) - val(i);
      if (dv == 0.0) return family.H_grid[i];
      return family.H_grid[i] +
             (t - val(i)) * (family.H_grid[i + 1] - family.H_grid[i]) / dv;
    }
  }
  return family.H_grid[n - 1];
}

}  // namespace

double cmc_time(const CmcFamily& family, int vertex, double t) {
  Eigen::VectorXd val(family.size());
  for (int i = 0; i < family.size(); ++i) val(i) = family.solutions[i].u(vertex);
  return invert_monotone(family, val, t);
}

double cmc_time(const CmcFamily& family, const Eigen::Vector2d& disc_point,
                double t) {
  Eigen::VectorXd val(family.size());
  for (int i = 0; i < family.size(); ++i)
    val(i) = interpolate_graph(family.solutions[i].mesh,
                               family.solutions[i].u, disc_point);
  return invert_monotone(family, val, t);
}

double monotonicity_probe(const CmcFamily& family, double H) {
  const int i = family.index_of(H);
  if (i <= 0 || i + 1 >= family.size())
    throw std::invalid_argument("monotonicity_probe: H not interior to grid");
  const DiskMesh& mesh = family.solutions[i].mesh;
  const double dH = family.H_grid[i + 1] - family.H_grid[i - 1];
  double worst = -std::numeric_limits<double>::infinity();
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    if (mesh.boundary[v]) continue;
    worst = std::max(
        worst, (family.solutions[i + 1].u(v) - family.solutions[i - 1].u(v)) /
                   dH);
  }
  return worst;
}

}  // namespace ads

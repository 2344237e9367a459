// Families of CMC graphs over an H-grid, the discrete CMC time function,
// and monotonicity probes of the foliation.

#ifndef ADSCMC_FOLIATION_HPP_
#define ADSCMC_FOLIATION_HPP_

#include "adscmc/solver.hpp"

namespace ads {

struct CmcFamily {
  std::vector<double> H_grid;          // sorted ascending
  std::vector<CmcSolution> solutions;  // on a shared mesh
  BoundaryData boundary;

  int size() const { return static_cast<int>(H_grid.size()); }
  int index_of(double H) const;  // exact grid match or -1
};

// Solves every leaf by continuation from the H nearest 0 outward in both
// directions (warm start from the neighbor leaf); the first leaf runs the
// full exhaustion, later leaves re-solve on the shared final mesh with their
// own carrier trace. Throws if any member fails to converge.
CmcFamily solve_family(const BoundaryData& f, std::vector<double> H_grid,
                       const SolverConfig& config);

// The unique H with u_H = t at the given vertex, by monotone piecewise-linear
// inverse interpolation. Throws when t lies outside the covered band.
double cmc_time(const CmcFamily& family, int vertex, double t);
// Same at an arbitrary Poincare disc point, interpolating each leaf.
double cmc_time(const CmcFamily& family, const Eigen::Vector2d& disc_point,
                double t);

// Central difference du/dH at the interior grid point H; returns the maximum
// over interior vertices (strictly negative for a foliation).
double monotonicity_probe(const CmcFamily& family, double H);

}  // namespace ads

#endif  // ADSCMC_FOLIATION_HPP_

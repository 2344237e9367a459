// Triangulated geodesic disk in H^2 (polar ring construction) and nodal
// graph functions over it.

#ifndef ADSCMC_MESH_HPP_
#define ADSCMC_MESH_HPP_

#include <array>
#include <vector>

#include "adscmc/quadric.hpp"

namespace ads {

struct DiskMesh {
  std::vector<Eigen::Vector3d> vertices;  // hyperboloid coordinates of H^2
  std::vector<Eigen::Vector2d> disc;      // Poincare disc coordinates
  std::vector<std::array<int, 3>> triangles;  // positively oriented
  std::vector<char> boundary;                 // 1 on the outer ring
  double R = 0.0;  // hyperbolic radius
  double h = 0.0;  // target hyperbolic edge length

  std::vector<std::vector<int>> one_ring;  // vertex -> adjacent vertices
  std::vector<std::vector<int>> two_ring;  // vertex -> 2-ring (excl. self)
  std::vector<std::vector<int>> vertex_triangles;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_interior() const;
  double hyperbolic_radius_of(int v) const;
};

// Polar mesh of the geodesic ball B(0, R): rings at radius j*h with ring
// sizes tracking 2 pi sinh(rho) / h. All edges stay below 1.5 h.
DiskMesh build_mesh(double R, double h);

// Nodal fiber values over the mesh.
using GraphFunction = Eigen::VectorXd;

// Samples a closed-form graph t(x) at the mesh vertices.
GraphFunction sample_graph(const DiskMesh& mesh,
                           const std::function<double(const Eigen::Vector3d&)>& t);

// Maximum hyperbolic edge length (mesh quality check).
double max_edge_length(const DiskMesh& mesh);

// Piecewise-linear interpolation of nodal values at a Poincare disc point.
// Sets *inside to false (and falls back to the nearest vertex) when the point
// lies outside the triangulation.
double interpolate_graph(const DiskMesh& mesh, const GraphFunction& u,
                         const Eigen::Vector2d& disc_point,
                         bool* inside = nullptr);

}  // namespace ads

#endif  // ADSCMC_MESH_HPP_

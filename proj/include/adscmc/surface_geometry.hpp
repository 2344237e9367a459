// Per-vertex extrinsic geometry of a discrete spacelike graph: embedding,
// unit future normal, gradient function, second fundamental form (local
// polynomial fit in the tangent-normal frame), mean curvature, |II|^2,
// Gauss-equation sectional curvature, and the induced cotan Laplacian.

#ifndef ADSCMC_SURFACE_GEOMETRY_HPP_
#define ADSCMC_SURFACE_GEOMETRY_HPP_

#include <Eigen/Sparse>

#include "adscmc/mesh.hpp"

namespace ads {

using Mat4 = Eigen::Matrix<double, Eigen::Dynamic, 4>;

// Embeds the graph in the quadric through the chart.
Mat4 embed_graph(const DiskMesh& mesh, const GraphFunction& u,
                 const SplitChart& chart);

struct SurfaceGeometry {
  Mat4 F;               // embedded vertices
  Mat4 N;               // unit future normals
  Eigen::VectorXd nu;   // gradient function -g(N, T), >= 1
  Eigen::VectorXd H;    // mean curvature (trace of II)
  Eigen::VectorXd ii2;  // |II|^2
  Eigen::VectorXd K;    // Gauss-equation sectional curvature -1 - det B
  std::vector<Eigen::Matrix2d> II;  // in the orthonormal tangent frame
  std::vector<Eigen::Matrix<double, 4, 2>> frames;  // tangent frame E1, E2

  double max_interior(const DiskMesh& mesh,
                      const std::function<double(int)>& f) const;
};

SurfaceGeometry extrinsic_geometry(const DiskMesh& mesh, const GraphFunction& u,
                                   const SplitChart& chart);

// Residual of the Gauss equation per interior vertex: an intrinsic curvature
// estimate (curvature -1 comparison angles around the vertex) minus
// -1 - det B from the fitted shape operator. Boundary entries are zero.
Eigen::VectorXd sectional_curvature_check(const DiskMesh& mesh,
                                          const SurfaceGeometry& geom);

// min over triangles of 1 - |grad_{S^n} u|^2 (conformal spherical gradient);
// negative means the graph fails to be spacelike.
double spacelike_margin(const DiskMesh& mesh, const GraphFunction& u);

// Induced geodesic distance between embedded space-related vertices.
double induced_edge_length(const Eigen::RowVector4d& a,
                           const Eigen::RowVector4d& b);

// Lumped cotan Laplace-Beltrami of the induced metric: stiffness matrix S
// (S v)_i = sum_j w_ij (v_j - v_i) and lumped vertex areas, built from the
// induced edge lengths.
struct CotanOperator {
  Eigen::SparseMatrix<double> stiffness;
  Eigen::VectorXd area;
};

CotanOperator build_cotan_operator(const DiskMesh& mesh, const Mat4& F);

}  // namespace ads

#endif  // ADSCMC_SURFACE_GEOMETRY_HPP_

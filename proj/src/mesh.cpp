#include "adscmc/mesh.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace ads {

namespace {

Eigen::Vector3d polar_point(double rho, double theta) {
  return {std::sinh(rho) * std::cos(theta), std::sinh(rho) * std::sin(theta),
          std::cosh(rho)};
}

}  // namespace

int DiskMesh::num_interior() const {
  int c = 0;
  for (char b : boundary) c += (b == 0);
  return c;
}

double DiskMesh::hyperbolic_radius_of(int v) const {
  return std::acosh(std::max(vertices[v](2), 1.0));
}

DiskMesh build_mesh(double R, double h) {
  if (!(R > 0.0 && R <= 6.0) || !(h > 0.0 && h <= R / 4.0 + 1e-12)) {
    throw std::invalid_argument("build_mesh: need R in (0,6], h in (0, R/4]");
  }
  DiskMesh mesh;
  mesh.R = R;
  mesh.h = h;

  const int J = static_cast<int>(std::ceil(R / h - 1e-9));
  const double dr = R / J;

  std::vector<int> ring_start(J + 1), ring_size(J + 1);
  mesh.vertices.push_back(polar_point(0.0, 0.0));
  mesh.disc.push_back({0.0, 0.0});
  ring_start[0] = 0;
  ring_size[0] = 1;
  std::vector<double> ring_offset(J + 1, 0.0);
  for (int j = 1; j <= J; ++j) {
    const double rho = j * dr;
    const int N = std::max(
        6, static_cast<int>(std::ceil(2.0 * M_PI * std::sinh(rho) / (0.85 * h))));
    ring_start[j] = static_cast<int>(mesh.vertices.size());
    ring_size[j] = N;
    ring_offset[j] = (j % 2) * M_PI / N;
    const double rd = std::tanh(rho / 2.0);
    for (int k = 0; k < N; ++k) {
      const double theta = ring_offset[j] + 2.0 * M_PI * k / N;
      mesh.vertices.push_back(polar_point(rho, theta));
      mesh.disc.push_back({rd * std::cos(theta), rd * std::sin(theta)});
    }
  }

  // Fan around the center.
  for (int k = 0; k < ring_size[1]; ++k) {
    mesh.triangles.push_back(
        {0, ring_start[1] + k, ring_start[1] + (k + 1) % ring_size[1]});
  }
  // Merge strips between consecutive rings by advancing the lagging angle.
  for (int j = 1; j < J; ++j) {
    const int Na = ring_size[j], Nb = ring_size[j + 1];
    const int sa = ring_start[j], sb = ring_start[j + 1];
    auto angle_a = [&](int i) {
      return ring_offset[j] + 2.0 * M_PI * i / Na;
    };
    auto angle_b = [&](int o) {
      return ring_offset[j + 1] + 2.0 * M_PI * o / Nb;
    };
    int i = 0, o = 0;
    while (i < Na || o < Nb) {
      const bool advance_outer =
          o < Nb && (i == Na || angle_b(o + 1) <= angle_a(i + 1));
      if (advance_outer) {
        mesh.triangles.push_back(
            {sb + o % Nb, sb + (o + 1) % Nb, sa + i % Na});
        ++o;
      } else {
        mesh.triangles.push_back(
            {sa + i % Na, sb + o % Nb, sa + (i + 1) % Na});
        ++i;
      }
    }
  }

  const int nv = mesh.num_vertices();
  mesh.boundary.assign(nv, 0);
  for (int k = 0; k < ring_size[J]; ++k) mesh.boundary[ring_start[J] + k] = 1;

  // Orientation check in disc coordinates.
  for (auto& t : mesh.triangles) {
    const Eigen::Vector2d a = mesh.disc[t[0]], b = mesh.disc[t[1]],
                          c = mesh.disc[t[2]];
    const double cr = (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
    if (cr < 0.0) std::swap(t[1], t[2]);
  }

  mesh.one_ring.assign(nv, {});
  mesh.vertex_triangles.assign(nv, {});
  std::vector<std::set<int>> adj(nv);
  for (int ti = 0; ti < static_cast<int>(mesh.triangles.size()); ++ti) {
    const auto& t = mesh.triangles[ti];
    for (int e = 0; e < 3; ++e) {
      adj[t[e]].insert(t[(e + 1) % 3]);
      adj[t[e]].insert(t[(e + 2) % 3]);
      mesh.vertex_triangles[t[e]].push_back(ti);
    }
  }
  mesh.two_ring.assign(nv, {});
  for (int v = 0; v < nv; ++v) {
    mesh.one_ring[v].assign(adj[v].begin(), adj[v].end());
    std::set<int> two(adj[v]);
    for (int w : adj[v]) two.insert(adj[w].begin(), adj[w].end());
    two.erase(v);
    mesh.two_ring[v].assign(two.begin(), two.end());
  }
  return mesh;
}

GraphFunction sample_graph(
    const DiskMesh& mesh,
    const std::function<double(const Eigen::Vector3d&)>& t) {
  GraphFunction u(mesh.num_vertices());
  for (int v = 0; v < mesh.num_vertices(); ++v) u(v) = t(mesh.vertices[v]);
  return u;
}

double max_edge_length(const DiskMesh& mesh) {
  double m = 0.0;
  for (const auto& t : mesh.triangles) {
    for (int e = 0; e < 3; ++e) {
      const Eigen::Vector3d& a = mesh.vertices[t[e]];
      const Eigen::Vector3d& b = mesh.vertices[t[(e + 1) % 3]];
      const double c = a(2) * b(2) - a(0) * b(0) - a(1) * b(1);
      m = std::max(m, std::acosh(std::max(c, 1.0)));
    }
  }
  return m;
}

double interpolate_graph(const DiskMesh& mesh, const GraphFunction& u,
                         const Eigen::Vector2d& disc_point, bool* inside) {
  const double kTol = 1e-10;
  for (const auto& t : mesh.triangles) {
    const Eigen::Vector2d& a = mesh.disc[t[0]];
    const Eigen::Vector2d& b = mesh.disc[t[1]];
    const Eigen::Vector2d& c = mesh.disc[t[2]];
    const double det =
        (b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y());
    if (std::abs(det) < 1e-300) continue;
    const Eigen::Vector2d p = disc_point - a;
    const double l1 = (p.x() * (c.y() - a.y()) - p.y() * (c.x() - a.x())) / det;
    const double l2 = ((b.x() - a.x()) * p.y() - (b.y() - a.y()) * p.x()) / det;
    const double l0 = 1.0 - l1 - l2;
    if (l0 >= -kTol && l1 >= -kTol && l2 >= -kTol) {
      if (inside) *inside = true;
      return l0 * u(t[0]) + l1 * u(t[1]) + l2 * u(t[2]);
    }
  }
  if (inside) *inside = false;
  int best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    const double d = (mesh.disc[v] - disc_point).squaredNorm();
    if (d < bd) {
      bd = d;
      best = v;
    }
  }
  return u(best);
}

}  // namespace ads

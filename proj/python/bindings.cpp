// Python bindings for the main operations: causal classification, boundary
// extensions, closed-form oracles, meshes, and the CMC solvers.

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "adscmc/exact_surfaces.hpp"
#include "adscmc/foliation.hpp"

namespace py = pybind11;
using namespace ads;

PYBIND11_MODULE(_adscmc, m) {
  m.doc() = "numerical CMC graphs in anti-de Sitter space";

  py::enum_<CausalClass>(m, "CausalClass")
      .value("TimeRelated", CausalClass::TimeRelated)
      .value("LightRelated", CausalClass::LightRelated)
      .value("SpaceRelated", CausalClass::SpaceRelated)
      .value("AntipodalLight", CausalClass::AntipodalLight)
      .value("AntipodalSpace", CausalClass::AntipodalSpace)
      .value("Coincident", CausalClass::Coincident)
      .value("Antipodal", CausalClass::Antipodal);

  m.def("bilinear_form", &bilinear_form, py::arg("a"), py::arg("b"));
  m.def(
      "classify_pair",
      [](const Vec& p, const Vec& q) {
        return classify_pair(QuadricPoint(p), QuadricPoint(q));
      },
      py::arg("p"), py::arg("q"));
  m.def(
      "lorentzian_distance",
      [](const Vec& p, const Vec& q) {
        return lorentzian_distance(QuadricPoint(p), QuadricPoint(q));
      },
      py::arg("p"), py::arg("q"));
  m.def(
      "exp_map",
      [](const Vec& p, const Vec& dir, double t) {
        return exp_map(TangentVector(QuadricPoint(p), dir), t).v;
      },
      py::arg("p"), py::arg("dir"), py::arg("t"));
  m.def("hyperboloid_point", &hyperboloid_point, py::arg("rho"),
        py::arg("dir"));

  py::enum_<Side>(m, "Side")
      .value("Past", Side::Past)
      .value("Future", Side::Future);
  m.def("equidistant_graph", &equidistant_graph, py::arg("theta"),
        py::arg("side"), py::arg("x"));
  m.def("equidistant_H", &equidistant_H, py::arg("theta"), py::arg("side"),
        py::arg("n"));
  m.def("cylinder_H", &cylinder_H, py::arg("k"), py::arg("theta"),
        py::arg("n"));
  m.def("cylinder_ii_norm", &cylinder_ii_norm, py::arg("k"), py::arg("theta"),
        py::arg("n"));
  m.def("cylinder_theta_from_H", &cylinder_theta_from_H, py::arg("k"),
        py::arg("H"), py::arg("n"));
  m.def("bound_rhs", &bound_rhs, py::arg("L"), py::arg("n"));
  m.def("extremal_theta", &extremal_theta, py::arg("H"), py::arg("n"));

  py::class_<BoundaryData>(m, "BoundaryData")
      .def(py::init<std::vector<double>, std::vector<double>>(),
           py::arg("angles"), py::arg("values"))
      .def_static("constant", &BoundaryData::constant, py::arg("c"),
                  py::arg("count") = 32)
      .def_static(
          "from_function",
          [](const std::function<double(double)>& f, int count) {
            return BoundaryData::from_function(f, count);
          },
          py::arg("f"), py::arg("count") = 64)
      .def_static("load", &BoundaryData::load, py::arg("path"))
      .def("save", &BoundaryData::save, py::arg("path"))
      .def("__call__", &BoundaryData::operator(), py::arg("phi"))
      .def("angles", &BoundaryData::angles)
      .def("values", &BoundaryData::values);
  m.def("oscillation", &oscillation, py::arg("f"));
  m.def("is_admissible", &is_admissible, py::arg("f"));

  py::class_<ExtremalPair>(m, "ExtremalPair")
      .def(py::init<BoundaryData>(), py::arg("f"))
      .def("upper", &ExtremalPair::upper, py::arg("x"))
      .def("lower", &ExtremalPair::lower, py::arg("x"));

  py::class_<DiskMesh>(m, "DiskMesh")
      .def_readonly("R", &DiskMesh::R)
      .def_readonly("h", &DiskMesh::h)
      .def_readonly("vertices", &DiskMesh::vertices)
      .def_readonly("triangles", &DiskMesh::triangles)
      .def_readonly("boundary", &DiskMesh::boundary)
      .def("num_vertices", &DiskMesh::num_vertices)
      .def("hyperbolic_radius_of", &DiskMesh::hyperbolic_radius_of,
           py::arg("v"));
  m.def("build_mesh", &build_mesh, py::arg("R"), py::arg("h"));
  m.def("max_edge_length", &max_edge_length, py::arg("mesh"));

  py::class_<SurfaceGeometry>(m, "SurfaceGeometry")
      .def_readonly("H", &SurfaceGeometry::H)
      .def_readonly("ii2", &SurfaceGeometry::ii2)
      .def_readonly("nu", &SurfaceGeometry::nu)
      .def_readonly("K", &SurfaceGeometry::K);
  m.def(
      "extrinsic_geometry",
      [](const DiskMesh& mesh, const GraphFunction& u) {
        return extrinsic_geometry(mesh, u, SplitChart::standard(2));
      },
      py::arg("mesh"), py::arg("u"));

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("H_target", &SolverConfig::H_target)
      .def_readwrite("tol_residual", &SolverConfig::tol_residual)
      .def_readwrite("tol_geom", &SolverConfig::tol_geom)
      .def_readwrite("tol_exhaust", &SolverConfig::tol_exhaust)
      .def_readwrite("max_newton", &SolverConfig::max_newton)
      .def_readwrite("radii", &SolverConfig::radii)
      .def_readwrite("h", &SolverConfig::h);

  py::class_<CmcSolution>(m, "CmcSolution")
      .def_readonly("mesh", &CmcSolution::mesh)
      .def_readonly("u", &CmcSolution::u)
      .def_readonly("geom", &CmcSolution::geom)
      .def_readonly("converged", &CmcSolution::converged)
      .def_readonly("H_target", &CmcSolution::H_target)
      .def("max_residual", &CmcSolution::max_residual);
  m.def("exhaustion_solve",
        [](const BoundaryData& f, double H, const SolverConfig& c) {
          return exhaustion_solve(f, H, c);
        },
        py::arg("f"), py::arg("H_target"), py::arg("config"));

  py::class_<CmcFamily>(m, "CmcFamily")
      .def_readonly("H_grid", &CmcFamily::H_grid)
      .def_readonly("solutions", &CmcFamily::solutions)
      .def("size", &CmcFamily::size);
  m.def("solve_family",
        [](const BoundaryData& f, std::vector<double> grid,
           const SolverConfig& c) { return solve_family(f, grid, c); },
        py::arg("f"), py::arg("H_grid"), py::arg("config"));
  m.def("monotonicity_probe", &monotonicity_probe, py::arg("family"),
        py::arg("H"));
  m.def("cmc_time",
        py::overload_cast<const CmcFamily&, int, double>(&cmc_time),
        py::arg("family"), py::arg("vertex"), py::arg("t"));
  m.def("cmc_time",
        py::overload_cast<const CmcFamily&, const Eigen::Vector2d&, double>(
            &cmc_time),
        py::arg("family"), py::arg("disc_point"), py::arg("t"));
}

// Command-line driver: causal classification, boundary extension export,
// CMC solves, foliations, closed-form oracles, and run verification.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "adscmc/exact_surfaces.hpp"
#include "adscmc/export.hpp"
#include "adscmc/foliation.hpp"

using nlohmann::ordered_json;

namespace {

ads::Vec parse_point(const std::string& s) {
  ads::Vec p(4);
  if (std::sscanf(s.c_str(), "%lf,%lf,%lf,%lf", &p(0), &p(1), &p(2), &p(3)) !=
      4)
    throw CLI::ValidationError("expected four comma-separated coordinates");
  return p;
}

// key = value lines overriding solver defaults.
void apply_config_file(const std::string& path, ads::SolverConfig* config) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot open config file " + path);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::istringstream key_in(line.substr(0, eq));
    std::string key;
    key_in >> key;
    const double val = std::stod(line.substr(eq + 1));
    if (key == "tol_residual") config->tol_residual = val;
    else if (key == "tol_geom") config->tol_geom = val;
    else if (key == "tol_exhaust") config->tol_exhaust = val;
    else if (key == "newton_damping") config->newton_damping = val;
    else if (key == "max_newton") config->max_newton = int(val);
    else if (key == "flow_dt") config->flow_dt = val;
    else if (key == "max_flow_steps") config->max_flow_steps = int(val);
    else if (key == "delta_space") config->delta_space = val;
    else if (key == "barrier_margin") config->barrier_margin = val;
    else throw CLI::ValidationError("unknown config key " + key);
  }
}

std::vector<double> radii_schedule(double R) {
  std::vector<double> radii;
  for (int i = 1; i <= 5; ++i) radii.push_back(R * (0.2 + 0.16 * i));
  radii.back() = R;
  return radii;
}

ordered_json config_echo(const ads::SolverConfig& c, long seed) {
  ordered_json j;
  j["tol_residual"] = ads::format_real(c.tol_residual);
  j["tol_geom"] = ads::format_real(c.tol_geom);
  j["tol_exhaust"] = ads::format_real(c.tol_exhaust);
  j["newton_damping"] = ads::format_real(c.newton_damping);
  j["max_newton"] = c.max_newton;
  j["flow_dt"] = ads::format_real(c.flow_dt);
  j["max_flow_steps"] = c.max_flow_steps;
  j["delta_space"] = ads::format_real(c.delta_space);
  j["barrier_margin"] = ads::format_real(c.barrier_margin);
  j["h"] = ads::format_real(c.h);
  ordered_json radii = ordered_json::array();
  for (double r : c.radii) radii.push_back(ads::format_real(r));
  j["radii"] = radii;
  j["seed"] = seed;
  return j;
}

int cmd_classify(const std::string& ps, const std::string& qs) {
  const ads::QuadricPoint p(parse_point(ps));
  const ads::QuadricPoint q(parse_point(qs));
  ordered_json j;
  const ads::CausalClass cls = ads::classify_pair(p, q);
  j["class"] = ads::to_string(cls);
  j["product"] = ads::format_real(ads::bilinear_form(p.v, q.v));
  if (cls == ads::CausalClass::TimeRelated)
    j["distance"] = ads::format_real(ads::lorentzian_distance(p, q));
  std::cout << j.dump() << "\n";
  return 0;
}

int cmd_extend(const std::string& boundary_path, int res,
               const std::string& out_path) {
  const ads::BoundaryData f = ads::BoundaryData::load(boundary_path);
  if (!ads::is_admissible(f)) {
    std::cerr << "boundary data not admissible (oscillation "
              << ads::format_real(ads::oscillation(f)) << " >= pi)\n";
    return 2;
  }
  const ads::ExtremalPair ext(f);
  const ads::ConvexHullModel hull = ads::convex_hull_build(f);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write " << out_path << "\n";
    return 1;
  }
  const double pi = 3.14159265358979323846;
  out << "alpha,phi,x,y,u_minus,u_plus,hull_lower,hull_upper\n";
  for (int i = 0; i < res; ++i) {
    const double alpha = (i + 0.5) * (0.5 * pi) / res;
    const double rho = std::atanh(std::sin(alpha));
    for (int j = 0; j < res; ++j) {
      const double phi = 2 * pi * j / res;
      ads::Vec dir(2);
      dir << std::cos(phi), std::sin(phi);
      const ads::Vec x = ads::hyperboloid_point(rho, dir);
      const double d = std::tanh(rho / 2);
      out << ads::format_real(alpha) << ',' << ads::format_real(phi) << ','
          << ads::format_real(d * std::cos(phi)) << ','
          << ads::format_real(d * std::sin(phi)) << ','
          << ads::format_real(ext.lower(x)) << ','
          << ads::format_real(ext.upper(x)) << ','
          << ads::format_real(ads::ch_boundary_value(x, hull,
                                                     ads::HullSide::Lower))
          << ','
          << ads::format_real(ads::ch_boundary_value(x, hull,
                                                     ads::HullSide::Upper))
          << '\n';
    }
  }
  return 0;
}

int cmd_solve(const std::string& boundary_path, double H, double R, double h,
              const std::string& method, const std::string& export_dir,
              ads::SolverConfig config, long seed) {
  const ads::BoundaryData f = ads::BoundaryData::load(boundary_path);
  config.H_target = H;
  config.h = h;
  config.radii = radii_schedule(R);
  ads::CmcSolution sol;
  if (method == "newton") {
    sol = ads::exhaustion_solve(f, H, config);
  } else {
    const ads::InvisibleDomain dom(f);
    ads::DiskMesh mesh = ads::build_mesh(R, h);
    ads::GraphFunction u(mesh.num_vertices());
    ads::CarrierHint hint;
    for (int v = 0; v < mesh.num_vertices(); ++v)
      u(v) = ads::carrier_value(dom, H, config, mesh.vertices[v], &hint);
    bool stalled = false;
    for (int s = 0; s < config.max_flow_steps && !stalled; ++s)
      u = ads::mcf_step(mesh, u, config, &stalled);
    sol.mesh = std::move(mesh);
    sol.u = std::move(u);
    sol.geom = ads::extrinsic_geometry(sol.mesh, sol.u,
                                       ads::SplitChart::standard(2));
    sol.H_target = H;
    sol.converged = sol.max_residual() <= config.tol_geom;
  }
  ordered_json echo = config_echo(config, seed);
  echo["boundary"] = boundary_path;
  echo["H"] = ads::format_real(H);
  echo["R"] = ads::format_real(R);
  echo["method"] = method;
  ads::export_run(sol, export_dir, echo);
  if (!sol.converged) {
    std::cerr << "solve did not converge (residual "
              << ads::format_real(sol.max_residual()) << ")\n";
    return 3;
  }
  std::cout << "converged, residual " << ads::format_real(sol.max_residual())
            << ", exported to " << export_dir << "\n";
  return 0;
}

int cmd_foliate(const std::string& boundary_path, double Hmin, double Hmax,
                int count, double R, double h, const std::string& export_dir,
                ads::SolverConfig config, long seed) {
  const ads::BoundaryData f = ads::BoundaryData::load(boundary_path);
  config.h = h;
  config.radii = radii_schedule(R);
  std::vector<double> grid;
  for (int i = 0; i < count; ++i)
    grid.push_back(count == 1 ? Hmin
                              : Hmin + (Hmax - Hmin) * i / (count - 1));
  const ads::CmcFamily family = ads::solve_family(f, grid, config);
  ordered_json echo = config_echo(config, seed);
  echo["boundary"] = boundary_path;
  echo["Hmin"] = ads::format_real(Hmin);
  echo["Hmax"] = ads::format_real(Hmax);
  echo["count"] = count;
  echo["R"] = ads::format_real(R);
  ads::export_family(family, export_dir, echo);
  std::cout << "foliation with " << family.size() << " leaves exported to "
            << export_dir << "\n";
  return 0;
}

int cmd_oracle(double theta, double H, int k, int n) {
  ordered_json j;
  j["equidistant_H_past"] = ads::format_real(
      ads::equidistant_H(theta, ads::Side::Past, n));
  j["cylinder_H"] = ads::format_real(ads::cylinder_H(k, theta, n));
  j["cylinder_ii_norm"] = ads::format_real(ads::cylinder_ii_norm(k, theta, n));
  j["cylinder_theta_from_H"] =
      ads::format_real(ads::cylinder_theta_from_H(k, H, n));
  j["cylinder_ii_norm_from_H"] =
      ads::format_real(ads::cylinder_ii_norm_from_H(k, H, n));
  j["bound_rhs"] = ads::format_real(ads::bound_rhs(std::abs(H), n));
  j["extremal_theta"] = ads::format_real(ads::extremal_theta(H, n));
  std::cout << j.dump() << "\n";
  return 0;
}

int cmd_verify(const std::string& dir) {
  std::string detail;
  if (ads::verify_run(dir, &detail)) {
    std::cout << "PASS\n";
    return 0;
  }
  std::cerr << "FAIL: " << detail << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical CMC graphs in anti-de Sitter space"};
  app.set_help_flag("--help", "print help");  // keep -h free for --h
  app.require_subcommand(1);
  ads::SolverConfig config;
  std::string config_path;
  long seed = 0;
  app.add_option("--config", config_path, "key = value solver overrides");
  app.add_option("--seed", seed, "seed recorded for randomized suites");

  std::string ps, qs;
  auto* classify = app.add_subcommand("classify", "causal class of a pair");
  classify->add_option("--p", ps, "first point, four coordinates")->required();
  classify->add_option("--q", qs, "second point")->required();

  std::string boundary, out = "extend.csv", export_dir = "run";
  int res = 32;
  auto* extend = app.add_subcommand("extend", "extremal extensions and hull");
  extend->add_option("--boundary", boundary, "boundary data file")->required();
  extend->add_option("--res", res, "hemisphere grid resolution");
  extend->add_option("--out", out, "output CSV path");

  double H = 0.0, R = 3.0, h = 0.1;
  std::string method = "newton";
  auto* solve = app.add_subcommand("solve", "CMC Dirichlet / exhaustion solve");
  solve->add_option("--boundary", boundary, "boundary data file")->required();
  solve->add_option("--H", H, "target mean curvature")->required();
  solve->add_option("--R", R, "final ball radius");
  solve->add_option("--h", h, "target edge length");
  solve->add_option("--method", method, "newton|flow")
      ->check(CLI::IsMember({"newton", "flow"}));
  solve->add_option("--export", export_dir, "export directory");

  double Hmin = -2.0, Hmax = 2.0;
  int count = 17;
  auto* foliate = app.add_subcommand("foliate", "solve a CMC family");
  foliate->add_option("--boundary", boundary, "boundary data file")->required();
  foliate->add_option("--Hmin", Hmin, "lowest mean curvature");
  foliate->add_option("--Hmax", Hmax, "highest mean curvature");
  foliate->add_option("--count", count, "grid size");
  foliate->add_option("--R", R, "final ball radius");
  foliate->add_option("--h", h, "target edge length");
  foliate->add_option("--export", export_dir, "export directory");

  double theta = 0.25;
  int k = 1, n = 2;
  auto* oracle = app.add_subcommand("oracle", "closed-form reference values");
  oracle->add_option("--theta", theta, "surface angle");
  oracle->add_option("--H", H, "mean curvature");
  oracle->add_option("--k", k, "cylinder factor dimension");
  oracle->add_option("--n", n, "space dimension");

  std::string verify_dir;
  auto* verify = app.add_subcommand("verify", "re-check an exported run");
  verify->add_option("--dir", verify_dir, "run directory")->required();

  for (CLI::App* sub : {classify, extend, solve, foliate, oracle, verify})
    sub->set_help_flag("--help", "print help");
  CLI11_PARSE(app, argc, argv);
  try {
    if (!config_path.empty()) apply_config_file(config_path, &config);
    if (classify->parsed()) return cmd_classify(ps, qs);
    if (extend->parsed()) return cmd_extend(boundary, res, out);
    if (solve->parsed())
      return cmd_solve(boundary, H, R, h, method, export_dir, config, seed);
    if (foliate->parsed())
      return cmd_foliate(boundary, Hmin, Hmax, count, R, h, export_dir,
                         config, seed);
    if (oracle->parsed()) return cmd_oracle(theta, H, k, n);
    if (verify->parsed()) return cmd_verify(verify_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

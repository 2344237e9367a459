#include "adscmc/export.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "adscmc/exact_surfaces.hpp"

namespace ads {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string leaf_name(int i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "leaf_%03d.csv", i);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct CsvRow {
  double x, y, u, H, nu, ii2;
  int boundary;
};

std::vector<CsvRow> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    CsvRow r{};
    int vertex = 0;
    if (std::sscanf(line.c_str(), "%d,%lf,%lf,%d,%lf,%lf,%lf,%lf", &vertex,
                    &r.x, &r.y, &r.boundary, &r.u, &r.H, &r.nu, &r.ii2) != 8)
      throw std::runtime_error("malformed CSV row in " + path);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string file_digest(const std::string& path) {
  const std::string bytes = read_file(path);
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void export_solution_csv(const CmcSolution& sol, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "vertex,x,y,boundary,u,H,nu,ii2\n";
  for (int v = 0; v < sol.mesh.num_vertices(); ++v) {
    out << v << ',' << format_real(sol.mesh.disc[v].x()) << ','
        << format_real(sol.mesh.disc[v].y()) << ','
        << int(sol.mesh.boundary[v]) << ',' << format_real(sol.u(v)) << ','
        << format_real(sol.geom.H(v)) << ',' << format_real(sol.geom.nu(v))
        << ',' << format_real(sol.geom.ii2(v)) << '\n';
  }
}

ordered_json leaf_summary(const CmcSolution& sol, const std::string& csv_name) {
  double max_ii2 = 0.0;
  for (int v = 0; v < sol.mesh.num_vertices(); ++v)
    if (!sol.mesh.boundary[v]) max_ii2 = std::max(max_ii2, sol.geom.ii2(v));
  ordered_json j;
  j["csv"] = csv_name;
  j["H_target"] = format_real(sol.H_target);
  j["converged"] = sol.converged;
  j["vertices"] = sol.mesh.num_vertices();
  j["interior"] = sol.mesh.num_interior();
  j["R"] = format_real(sol.mesh.R);
  j["h"] = format_real(sol.mesh.h);
  j["max_residual"] = format_real(sol.max_residual());
  j["max_ii2"] = format_real(max_ii2);
  j["bound_rhs"] = format_real(bound_rhs(std::abs(sol.H_target), 2));
  return j;
}

namespace {

void write_manifest(const ordered_json& manifest, const std::string& dir) {
  std::ofstream out(fs::path(dir) / "manifest.json", std::ios::binary);
  out << manifest.dump(2) << '\n';
}

ordered_json manifest_skeleton(const std::string& command,
                               const ordered_json& config_echo) {
  ordered_json m;
  m["format"] = 1;
  m["command"] = command;
  m["config"] = config_echo;
  m["leaves"] = ordered_json::array();
  return m;
}

}  // namespace

void export_run(const CmcSolution& sol, const std::string& dir,
                const ordered_json& config_echo) {
  fs::create_directories(dir);
  const std::string name = leaf_name(0);
  export_solution_csv(sol, (fs::path(dir) / name).string());
  ordered_json m = manifest_skeleton("solve", config_echo);
  ordered_json leaf = leaf_summary(sol, name);
  leaf["digest"] = file_digest((fs::path(dir) / name).string());
  m["leaves"].push_back(leaf);
  write_manifest(m, dir);
}

void export_family(const CmcFamily& family, const std::string& dir,
                   const ordered_json& config_echo) {
  fs::create_directories(dir);
  ordered_json m = manifest_skeleton("foliate", config_echo);
  for (int i = 0; i < family.size(); ++i) {
    const std::string name = leaf_name(i);
    export_solution_csv(family.solutions[i],
                        (fs::path(dir) / name).string());
    ordered_json leaf = leaf_summary(family.solutions[i], name);
    leaf["digest"] = file_digest((fs::path(dir) / name).string());
    m["leaves"].push_back(leaf);
  }
  ordered_json gaps = ordered_json::array();
  for (int i = 0; i + 1 < family.size(); ++i) {
    double gap = 0.0;
    ordering_verify(family.solutions[i + 1], family.solutions[i], 1e-6, &gap);
    gaps.push_back(format_real(gap));
  }
  m["ordering_min_gaps"] = gaps;
  ordered_json mono = ordered_json::array();
  for (int i = 1; i + 1 < family.size(); ++i) {
    ordered_json p;
    p["H"] = format_real(family.H_grid[i]);
    p["max_dudH"] = format_real(monotonicity_probe(family, family.H_grid[i]));
    mono.push_back(p);
  }
  m["monotonicity"] = mono;
  write_manifest(m, dir);
}

bool verify_run(const std::string& dir, std::string* detail) {
  auto fail = [&](const std::string& why) {
    if (detail) *detail = why;
    return false;
  };
  const fs::path root(dir);
  if (!fs::exists(root / "manifest.json")) return fail("manifest missing");
  ordered_json m;
  try {
    std::ifstream in(root / "manifest.json");
    in >> m;
  } catch (const std::exception& e) {
    return fail(std::string("manifest unreadable: ") + e.what());
  }
  if (!m.contains("leaves") || m["leaves"].empty())
    return fail("manifest has no leaves");
  for (const auto& leaf : m["leaves"]) {
    const std::string name = leaf.at("csv").get<std::string>();
    const fs::path csv = root / name;
    if (!fs::exists(csv)) return fail(name + " missing");
    if (file_digest(csv.string()) != leaf.at("digest").get<std::string>())
      return fail(name + ": digest mismatch");
    if (!leaf.at("converged").get<bool>()) return fail(name + ": not converged");
    std::vector<CsvRow> rows;
    try {
      rows = read_csv(csv.string());
    } catch (const std::exception& e) {
      return fail(e.what());
    }
    if (static_cast<int>(rows.size()) != leaf.at("vertices").get<int>())
      return fail(name + ": vertex count mismatch");
    const double H_target = std::stod(leaf.at("H_target").get<std::string>());
    const double bound = std::stod(leaf.at("bound_rhs").get<std::string>());
    double max_res = 0.0, max_ii2 = 0.0;
    for (const auto& r : rows) {
      if (r.boundary) continue;
      max_res = std::max(max_res, std::abs(r.H - H_target));
      max_ii2 = std::max(max_ii2, r.ii2);
      if (r.nu < 1.0 - 1e-9) return fail(name + ": gradient function below 1");
    }
    if (std::abs(max_res -
                 std::stod(leaf.at("max_residual").get<std::string>())) >
        1e-12)
      return fail(name + ": residual statistic mismatch");
    if (std::abs(max_ii2 - std::stod(leaf.at("max_ii2").get<std::string>())) >
        1e-12)
      return fail(name + ": curvature statistic mismatch");
    if (max_ii2 > bound * 1.05) return fail(name + ": |II|^2 bound violated");
    if (std::abs(bound - bound_rhs(std::abs(H_target), 2)) > 1e-12)
      return fail(name + ": stored bound inconsistent");
  }
  if (m.contains("ordering_min_gaps"))
    for (const auto& g : m["ordering_min_gaps"])
      if (std::stod(g.get<std::string>()) <= 0.0)
        return fail("ordering gap not positive");
  if (m.contains("monotonicity"))
    for (const auto& p : m["monotonicity"])
      if (std::stod(p.at("max_dudH").get<std::string>()) >= 0.0)
        return fail("monotonicity probe not negative");
  if (detail) detail->clear();
  return true;
}

}  // namespace ads

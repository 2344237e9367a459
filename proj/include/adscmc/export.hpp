// Per-vertex CSV export, JSON run manifests, and re-verification of an
// exported run against its manifest.

#ifndef ADSCMC_EXPORT_HPP_
#define ADSCMC_EXPORT_HPP_

#include <cstdint>
#include <string>

#include <json.hpp>

#include "adscmc/foliation.hpp"

namespace ads {

// 17 significant digits, enough to round-trip a double.
std::string format_real(double x);

// FNV-1a of the file bytes, as a fixed-width hex string.
std::string file_digest(const std::string& path);

// Columns: vertex, x, y (Poincare disc), boundary, u, H, nu, ii2.
void export_solution_csv(const CmcSolution& sol, const std::string& path);

nlohmann::ordered_json leaf_summary(const CmcSolution& sol,
                                    const std::string& csv_name);

// Writes <dir>/leaf_000.csv and <dir>/manifest.json.
void export_run(const CmcSolution& sol, const std::string& dir,
                const nlohmann::ordered_json& config_echo);

// Writes one CSV per leaf plus a manifest with ordering gaps and
// monotonicity statistics.
void export_family(const CmcFamily& family, const std::string& dir,
                   const nlohmann::ordered_json& config_echo);

// Re-checks an exported run: digests, re-derived residual and curvature-bound
// statistics, ordering gaps. Returns true iff everything passes; *detail
// receives the first failure description.
bool verify_run(const std::string& dir, std::string* detail = nullptr);

}  // namespace ads

#endif  // ADSCMC_EXPORT_HPP_

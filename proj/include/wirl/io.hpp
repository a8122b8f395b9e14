#pragma once

// File formats. JSON numbers use nlohmann's round-trip float printer; CSV
// numbers use std::to_chars shortest form. Both reload to bit-identical
// doubles. Schema errors carry a JSON-pointer location.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "wirl/domain.hpp"
#include "wirl/learner.hpp"
#include "wirl/solvers.hpp"
#include "wirl/theorems.hpp"

namespace wirl::io {

using nlohmann::json;
namespace fs = std::filesystem;

std::string format_number(double x);

/// Array of equal-length numeric arrays.
std::vector<Vector> vectors_from_json(const json& j, const std::string& where);

json read_json_file(const fs::path& path);
/// Pretty-printed JSON with a trailing newline.
void write_json_file(const fs::path& path, const json& j);
std::string read_text_file(const fs::path& path);
void write_text_file(const fs::path& path, const std::string& content);

// Instances: [{"id": str, "state": any, "actions": [[f64; d], ...]}, ...]
InstanceMap instances_from_json(const json& j);
json instances_to_json(const InstanceMap& instances);
InstanceMap load_instances(const fs::path& path);
void save_instances(const fs::path& path, const InstanceMap& instances);

// Trajectories: [{"instance_id": str, "action": [f64; d]}, ...]
TrajectorySet trajectories_from_json(const json& j);
json trajectories_to_json(const TrajectorySet& ts);
TrajectorySet load_trajectories(const fs::path& path);
void save_trajectories(const fs::path& path, const TrajectorySet& ts);

// {"kind":"box","lo":[...],"hi":[...]} | {"kind":"ball","center":[...],"radius":r}
// | {"kind":"simplex","dim":n}
FeasibleSet feasible_from_json(const json& j);
json feasible_to_json(const FeasibleSet& set);
FeasibleSet load_feasible(const fs::path& path);

// {"weights": [f64; m], "capacity": f64, "item_features": [[f64; d]; m]}
KnapsackSpec knapsack_from_json(const json& j, const std::string& where = "");
json knapsack_to_json(const KnapsackSpec& spec);

// {"schedule":{"kind":"inverse_sqrt"|"harmonic","alpha0":f64},
//  "max_iters":K, "target_eps":f64|null, "tie_tol":f64, "seed":u64,
//  "init":"zero"|"random"|[f64; d], "threads":n}
RunConfig run_config_from_json(const json& j);
json run_config_to_json(const RunConfig& cfg);
RunConfig load_run_config(const fs::path& path);

/// Ground truth written by `generate`.
struct Manifest {
  std::uint64_t seed = 0;
  Vector phi0;
  double tie_tol = 0.0;
  std::optional<FeasibleSet> feasible;
};

Manifest manifest_from_json(const json& j);
json manifest_to_json(const Manifest& m);
Manifest load_manifest(const fs::path& path);

/// Header `k,F,grad_norm,phi_0..phi_{d-1}` followed by one row per record.
std::string runlog_csv(const RunLog& log);
void write_runlog_csv(const RunLog& log, const fs::path& path);
/// Records without subgradient vectors; best_* fields are recomputed.
RunLog parse_runlog_csv(const std::string& text);
RunLog load_runlog_csv(const fs::path& path);

/// {"best_phi":[...], "best_F":f64, "best_k":k, "iters_run":k, "warnings":[...]}
json summary_to_json(const RunLog& log);

/// {"gaps":[...], "F":f64, "eps":f64, "bound_eN":f64, "equivalence":{...}}
json report_to_json(const GapReport& report, double eps,
                    const std::optional<EquivalenceResult>& equivalence);

}  // namespace wirl::io

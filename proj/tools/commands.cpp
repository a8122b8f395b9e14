#include "commands.hpp"

#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "wirl/error.hpp"
#include "wirl/io.hpp"
#include "wirl/projection.hpp"
#include "wirl/solvers.hpp"
#include "wirl/theorems.hpp"
#include "wirl/wasserstein.hpp"

namespace wirl::cli {
namespace {

using io::json;

constexpr const char* kInstancesFile = "instances.json";
constexpr const char* kTrajectoriesFile = "expert_trajectories.json";
constexpr const char* kManifestFile = "manifest.json";

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail_io("cannot create directory '" + dir.string() + "': " + ec.message());
}

std::string pad_index(std::size_t i, std::size_t width) {
  std::string s = std::to_string(i);
  return std::string(width > s.size() ? width - s.size() : 0, '0') + s;
}

// Integer coordinates keep every dot product with small rational weights exact.
std::vector<Instance> random_instances(const json& entry, const std::string& where, std::mt19937_64& rng) {
  auto get_u = [&](const char* key) -> std::size_t {
    if (!entry.contains(key) || !entry[key].is_number_unsigned()) {
      fail_validation("schema error at " + where + ": '" + key + "' must be a nonnegative integer");
    }
    return entry[key].get<std::size_t>();
  };
  auto get_i = [&](const char* key, long long fallback) -> long long {
    if (!entry.contains(key)) return fallback;
    if (!entry[key].is_number_integer()) {
      fail_validation("schema error at " + where + ": '" + key + "' must be an integer");
    }
    return entry[key].get<long long>();
  };
  const std::size_t count = get_u("count");
  const std::size_t dim = get_u("dim");
  const std::size_t num_actions = get_u("num_actions");
  const long long lo = get_i("coord_min", -5);
  const long long hi = get_i("coord_max", 5);
  if (count == 0 || dim == 0 || num_actions == 0 || lo > hi) {
    fail_validation("schema error at " + where + ": count, dim, num_actions must be >= 1 and coord_min <= coord_max");
  }
  const std::string prefix = entry.value("id_prefix", std::string("r"));
  std::uniform_int_distribution<long long> coord(lo, hi);
  std::vector<Instance> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<Vector> actions(num_actions, Vector(dim));
    for (auto& a : actions) {
      for (double& x : a) x = static_cast<double>(coord(rng));
    }
    out.emplace_back(prefix + pad_index(i, 3), json{{"index", i}}, std::move(actions));
  }
  return out;
}

std::vector<Instance> build_instances(const json& spec, std::mt19937_64& rng) {
  if (!spec.is_object() || !spec.contains("instances") || !spec["instances"].is_array()) {
    fail_validation("schema error at /: expected {\"instances\": [...]}");
  }
  std::vector<Instance> out;
  const json& entries = spec["instances"];
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string where = "/instances/" + std::to_string(i);
    const json& e = entries[i];
    if (!e.is_object() || !e.contains("kind") || !e["kind"].is_string()) {
      fail_validation("schema error at " + where + ": missing string field 'kind'");
    }
    const std::string kind = e["kind"].get<std::string>();
    if (kind == "random") {
      auto generated = random_instances(e, where, rng);
      for (auto& inst : generated) out.push_back(std::move(inst));
      continue;
    }
    if (!e.contains("id") || !e["id"].is_string()) {
      fail_validation("schema error at " + where + ": missing string field 'id'");
    }
    const std::string id = e["id"].get<std::string>();
    const json state = e.contains("state") ? e["state"] : json(nullptr);
    if (kind == "explicit") {
      out.push_back(Instance(id, state, io::vectors_from_json(e.value("actions", json()), where + "/actions")));
    } else if (kind == "knapsack") {
      out.push_back(knapsack_instance(io::knapsack_from_json(e, where), id, state));
    } else if (kind == "polytope") {
      out.push_back(
          polytope_vertex_instance(io::vectors_from_json(e.value("vertices", json()), where + "/vertices"), id, state));
    } else {
      fail_validation("schema error at " + where + "/kind: unknown instance kind '" + kind + "'");
    }
  }
  if (out.empty()) fail_validation("generation spec produced no instances");
  return out;
}

struct Dataset {
  InstanceMap instances;
  TrajectorySet data;
};

Dataset load_dataset(const fs::path& dir) {
  Dataset ds{io::load_instances(dir / kInstancesFile), io::load_trajectories(dir / kTrajectoriesFile)};
  require_valid(ds.data, ds.instances);
  return ds;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace

void cmd_generate(const GenerateOptions& opt, std::ostream& out) {
  const json phi0_doc = io::read_json_file(opt.phi0);
  io::Manifest manifest;
  manifest.seed = opt.seed;
  manifest.tie_tol = opt.tie_tol;
  if (phi0_doc.is_array()) {
    manifest.phi0 = phi0_doc.get<Vector>();
  } else {
    json m = phi0_doc;
    m["seed"] = opt.seed;
    const io::Manifest parsed = io::manifest_from_json(m);
    manifest.phi0 = parsed.phi0;
    manifest.feasible = parsed.feasible;
  }
  const Weights phi0(manifest.phi0);
  if (manifest.feasible && !contains(*manifest.feasible, phi0.values())) {
    fail_validation("phi0 " + format_vector(phi0.values()) + " is not in the feasible set");
  }

  std::mt19937_64 rng(opt.seed);
  const auto instances = build_instances(io::read_json_file(opt.spec), rng);

  InstanceMap by_id;
  TrajectorySet experts;
  for (const Instance& inst : instances) {
    if (by_id.contains(inst.id())) fail_validation("duplicate instance id '" + inst.id() + "'");
    experts.trajectories.push_back({inst.id(), solve(phi0, inst, opt.tie_tol).chosen});
    by_id.emplace(inst.id(), inst);
  }

  ensure_dir(opt.out);
  io::save_instances(opt.out / kInstancesFile, by_id);
  io::save_trajectories(opt.out / kTrajectoriesFile, experts);
  io::write_json_file(opt.out / kManifestFile, io::manifest_to_json(manifest));
  out << "generated " << by_id.size() << " instances and " << experts.size() << " expert trajectories in "
      << opt.out.string() << "\n";
}

void cmd_train(const TrainOptions& opt, std::ostream& out, std::ostream& err) {
  const Dataset ds = load_dataset(opt.data_dir);
  const FeasibleSet feasible = io::load_feasible(opt.feasible);
  RunConfig cfg = io::load_run_config(opt.config);
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.threads) cfg.threads = *opt.threads;
  if (opt.tie_tol) cfg.tie_tol = *opt.tie_tol;
  cfg.check();

  const Weights phi1 = initial_weights(feasible, cfg);
  const RunLog log = train(ds.data, ds.instances, feasible, phi1, cfg);
  for (const auto& w : log.warnings) err << "warning: " << w << "\n";

  ensure_dir(opt.out);
  io::write_runlog_csv(log, opt.out / "run.csv");
  io::write_json_file(opt.out / "summary.json", io::summary_to_json(log));

  const fs::path manifest_path = opt.data_dir / kManifestFile;
  if (fs::exists(manifest_path)) {
    const io::Manifest manifest = io::load_manifest(manifest_path);
    const Weights phi0(manifest.phi0);
    const Weights best(log.best_phi);
    const double eps = cfg.target_eps.value_or(opt.eps);
    const GapReport report = reward_gap_report(best, phi0, ds.data, ds.instances, manifest.tie_tol);
    const EquivalenceResult eq = equivalence_check(best, phi0, ds.data, ds.instances);
    io::write_json_file(opt.out / "gap_report.json", io::report_to_json(report, eps, eq));
  }
  out << "iters_run " << log.iters_run << "\nbest_k " << log.best_k << "\nbest_F "
      << io::format_number(log.best_F) << "\nbest_phi " << format_vector(log.best_phi) << "\n";
}

void cmd_wasserstein(const WassersteinOptions& opt, std::ostream& out) {
  auto points = [](const TrajectorySet& ts) {
    std::vector<Vector> p;
    for (const auto& t : ts.trajectories) p.push_back(t.action);
    if (p.empty()) fail_validation("trajectory file is empty");
    return EmpiricalMeasure(std::move(p));
  };
  const EmpiricalMeasure mu = points(io::load_trajectories(opt.a));
  const EmpiricalMeasure nu = points(io::load_trajectories(opt.b));
  const double w1 = w1_exact(mu, nu);
  const double lower = dual_gap_lower_bound(mu, nu, lipschitz_norm_projection());
  out << "w1 " << io::format_number(w1) << "\n";
  out << "dual_lower_bound " << io::format_number(lower) << "\n";
}

void cmd_verify(const VerifyOptions& opt, std::ostream& out) {
  if (!(opt.eps >= 0.0)) fail_validation("eps must be nonnegative");
  const Dataset ds = load_dataset(opt.data_dir);
  const io::Manifest manifest = io::load_manifest(opt.manifest);
  const RunLog log = io::load_runlog_csv(opt.run_dir / "run.csv");
  const double tie_tol = opt.tie_tol.value_or(manifest.tie_tol);
  const Weights phi0(manifest.phi0);
  const Weights best(log.best_phi);

  const GapReport report = reward_gap_report(best, phi0, ds.data, ds.instances, tie_tol);
  const auto violations = gap_bound_violations(report, opt.eps);
  const auto corollary = corollary_check(log, phi0, ds.data, ds.instances, opt.eps, tie_tol);
  const EquivalenceResult eq = equivalence_check(best, phi0, ds.data, ds.instances);

  const double bound = opt.eps * static_cast<double>(report.n());
  out << "best_k " << log.best_k << "  F(best) " << io::format_number(report.objective) << "  eps "
      << io::format_number(opt.eps) << "  eps*N " << io::format_number(bound) << "\n";
  out << std::left << std::setw(6) << "n" << std::setw(26) << "gap" << "in [0, eps*N)\n";
  for (std::size_t n = 0; n < report.n(); ++n) {
    const double g = report.gaps[n];
    const bool ok = g >= -kGapDust && g < bound + kGapDust;
    out << std::setw(6) << n << std::setw(26) << io::format_number(g) << (ok ? "yes" : "no") << "\n";
  }
  out << "corollary K_eps " << (corollary ? std::to_string(corollary->k) : std::string("absent")) << "\n";
  out << "equivalence subgrad_zero=" << bool_str(eq.subgrad_zero) << " actions_equal=" << bool_str(eq.actions_equal)
      << " w1_zero=" << bool_str(eq.w1_zero) << " unanimous=" << bool_str(eq.unanimous()) << "\n";

  if (opt.report) io::write_json_file(*opt.report, io::report_to_json(report, opt.eps, eq));

  if (!violations.empty()) fail_theorem("reward gap bound violated: " + violations.front());
  if (!corollary) {
    fail_theorem("eps not reached: min F(phi_k^best) = " + io::format_number(log.best_F) + " is not below eps " +
                 io::format_number(opt.eps));
  }
  if (!eq.unanimous()) {
    fail_theorem("equivalence conditions disagree: subgrad_zero=" + bool_str(eq.subgrad_zero) +
                 " actions_equal=" + bool_str(eq.actions_equal) + " w1_zero=" + bool_str(eq.w1_zero));
  }
  out << "verify: all checks passed\n";
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Intention learning via Wasserstein IRL for multi-objective optimization"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Plant phi0 and write instances plus expert trajectories");
  generate->add_option("--spec", gen.spec, "Instance generation spec (JSON)")->required();
  generate->add_option("--phi0", gen.phi0, "Ground-truth weights: [..] or {\"phi0\":[..],\"feasible\":{..}}")
      ->required();
  generate->add_option("--out", gen.out, "Output directory")->required();
  generate->add_option("--seed", gen.seed, "Seed for random instance kinds");
  generate->add_option("--tie-tol", gen.tie_tol, "Solver tie tolerance for the expert");

  TrainOptions tr;
  auto* train_cmd = app.add_subcommand("train", "Run projected subgradient intention learning");
  train_cmd->add_option("--data", tr.data_dir, "Directory with instances.json and expert_trajectories.json")
      ->required();
  train_cmd->add_option("--feasible", tr.feasible, "Feasible set (JSON)")->required();
  train_cmd->add_option("--config", tr.config, "Run config (JSON)")->required();
  train_cmd->add_option("--out", tr.out, "Output directory")->required();
  train_cmd->add_option("--seed", tr.seed, "Override config seed");
  train_cmd->add_option("--threads", tr.threads, "Parallel per-instance solves")->check(CLI::PositiveNumber);
  train_cmd->add_option("--tie-tol", tr.tie_tol, "Override config tie tolerance");
  train_cmd->add_option("--eps", tr.eps, "Bound for gap_report.json when target_eps is unset");

  WassersteinOptions ws;
  auto* wass = app.add_subcommand("wasserstein", "Exact W1 and linear dual lower bound between two trajectory files");
  wass->add_option("a", ws.a, "First trajectory file")->required();
  wass->add_option("b", ws.b, "Second trajectory file")->required();

  VerifyOptions vf;
  auto* verify = app.add_subcommand("verify", "Check the imitation bounds and equivalence on a finished run");
  verify->add_option("--data", vf.data_dir, "Generated data directory")->required();
  verify->add_option("--manifest", vf.manifest, "Manifest with phi0")->required();
  verify->add_option("--run", vf.run_dir, "Training output directory")->required();
  verify->add_option("--eps", vf.eps, "Target epsilon");
  verify->add_option("--tie-tol", vf.tie_tol, "Override manifest tie tolerance");
  verify->add_option("--out", vf.report, "Write the report JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error[validation]: " << e.what() << "\n";
    return static_cast<int>(ErrorCode::kValidation);
  }

  try {
    if (*generate) cmd_generate(gen, out);
    if (*train_cmd) cmd_train(tr, out, err);
    if (*wass) cmd_wasserstein(ws, out);
    if (*verify) cmd_verify(vf, out);
  } catch (const Error& e) {
    std::string msg = e.what();
    std::ranges::replace(msg, '\n', ' ');
    err << "error[" << error_code_name(e.code()) << "]: " << msg << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    err << "error[io]: " << e.what() << "\n";
    return static_cast<int>(ErrorCode::kIo);
  }
  return 0;
}

}  // namespace wirl::cli

#include "wirl/io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "wirl/error.hpp"

namespace wirl::io {
namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& msg) {
  fail_validation("schema error at " + (where.empty() ? std::string("/") : where) + ": " + msg);
}

const json& member(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) schema_error(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(where, "missing field '" + key + "'");
  return *it;
}

double read_number(const json& j, const std::string& where) {
  if (!j.is_number()) schema_error(where, "expected a number");
  return j.get<double>();
}

std::string read_string(const json& j, const std::string& where) {
  if (!j.is_string()) schema_error(where, "expected a string");
  return j.get<std::string>();
}

std::uint64_t read_unsigned(const json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    schema_error(where, "expected a nonnegative integer");
  }
  return j.get<std::uint64_t>();
}

Vector read_vector(const json& j, const std::string& where, std::size_t expected_dim = 0) {
  if (!j.is_array()) schema_error(where, "expected an array of numbers");
  if (expected_dim != 0 && j.size() != expected_dim) {
    schema_error(where, "expected " + std::to_string(expected_dim) + " numbers, got " +
                            std::to_string(j.size()));
  }
  Vector v;
  v.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(read_number(j[i], where + "/" + std::to_string(i)));
  return v;
}

std::vector<Vector> read_matrix(const json& j, const std::string& where) {
  if (!j.is_array()) schema_error(where, "expected an array of vectors");
  std::vector<Vector> rows;
  rows.reserve(j.size());
  std::size_t dim = 0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    rows.push_back(read_vector(j[i], where + "/" + std::to_string(i), dim));
    if (rows.back().empty()) schema_error(where + "/" + std::to_string(i), "empty vector");
    dim = rows.back().size();
  }
  return rows;
}

json vector_json(std::span<const double> v) { return json(Vector(v.begin(), v.end())); }

}  // namespace

std::vector<Vector> vectors_from_json(const json& j, const std::string& where) {
  return read_matrix(j, where);
}

std::string format_number(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_io("cannot open '" + path.string() + "' for reading");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail_validation("parse error in '" + path.string() + "' at byte " + std::to_string(e.byte));
  }
}

void write_json_file(const fs::path& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_io("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail_io("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) fail_io("write to '" + path.string() + "' failed");
}

InstanceMap instances_from_json(const json& j) {
  if (!j.is_array()) schema_error("", "expected an array of instances");
  InstanceMap out;
  std::size_t dim = 0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = "/" + std::to_string(i);
    std::string id = read_string(member(j[i], "id", where), where + "/id");
    json state = j[i].contains("state") ? j[i]["state"] : json(nullptr);
    auto actions = read_matrix(member(j[i], "actions", where), where + "/actions");
    if (actions.empty()) schema_error(where + "/actions", "instance needs at least one action");
    if (dim != 0 && actions.front().size() != dim) {
      schema_error(where + "/actions", "dimension " + std::to_string(actions.front().size()) +
                                           " differs from earlier instances (" + std::to_string(dim) + ")");
    }
    dim = actions.front().size();
    if (out.contains(id)) schema_error(where + "/id", "duplicate instance id '" + id + "'");
    out.emplace(id, Instance(id, std::move(state), std::move(actions)));
  }
  return out;
}

json instances_to_json(const InstanceMap& instances) {
  json arr = json::array();
  for (const auto& [id, inst] : instances) {
    json actions = json::array();
    for (const Vector& a : inst.actions()) actions.push_back(vector_json(a));
    arr.push_back({{"id", id}, {"state", inst.state()}, {"actions", std::move(actions)}});
  }
  return arr;
}

InstanceMap load_instances(const fs::path& path) { return instances_from_json(read_json_file(path)); }

void save_instances(const fs::path& path, const InstanceMap& instances) {
  write_json_file(path, instances_to_json(instances));
}

TrajectorySet trajectories_from_json(const json& j) {
  if (!j.is_array()) schema_error("", "expected an array of trajectories");
  TrajectorySet ts;
  std::size_t dim = 0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = "/" + std::to_string(i);
    Trajectory t;
    t.instance_id = read_string(member(j[i], "instance_id", where), where + "/instance_id");
    t.action = read_vector(member(j[i], "action", where), where + "/action", dim);
    if (t.action.empty()) schema_error(where + "/action", "empty action");
    dim = t.action.size();
    ts.trajectories.push_back(std::move(t));
  }
  return ts;
}

json trajectories_to_json(const TrajectorySet& ts) {
  json arr = json::array();
  for (const auto& t : ts.trajectories) {
    arr.push_back({{"instance_id", t.instance_id}, {"action", vector_json(t.action)}});
  }
  return arr;
}

TrajectorySet load_trajectories(const fs::path& path) {
  return trajectories_from_json(read_json_file(path));
}

void save_trajectories(const fs::path& path, const TrajectorySet& ts) {
  write_json_file(path, trajectories_to_json(ts));
}

FeasibleSet feasible_from_json(const json& j) {
  const std::string kind = read_string(member(j, "kind", ""), "/kind");
  if (kind == "box") {
    Vector lo = read_vector(member(j, "lo", ""), "/lo");
    Vector hi = read_vector(member(j, "hi", ""), "/hi", lo.size());
    return FeasibleSet::box(std::move(lo), std::move(hi));
  }
  if (kind == "ball") {
    Vector center = read_vector(member(j, "center", ""), "/center");
    return FeasibleSet::ball(std::move(center), read_number(member(j, "radius", ""), "/radius"));
  }
  if (kind == "simplex") {
    return FeasibleSet::simplex(read_unsigned(member(j, "dim", ""), "/dim"));
  }
  schema_error("/kind", "unknown feasible set kind '" + kind + "'");
}

json feasible_to_json(const FeasibleSet& set) {
  struct {
    json operator()(const Box& b) const { return {{"kind", "box"}, {"lo", b.lo}, {"hi", b.hi}}; }
    json operator()(const Ball& b) const {
      return {{"kind", "ball"}, {"center", b.center}, {"radius", b.radius}};
    }
    json operator()(const Simplex& s) const { return {{"kind", "simplex"}, {"dim", s.dim}}; }
  } visitor;
  return std::visit(visitor, set.kind());
}

FeasibleSet load_feasible(const fs::path& path) { return feasible_from_json(read_json_file(path)); }

KnapsackSpec knapsack_from_json(const json& j, const std::string& where) {
  KnapsackSpec spec;
  spec.weights = read_vector(member(j, "weights", where), where + "/weights");
  spec.capacity = read_number(member(j, "capacity", where), where + "/capacity");
  spec.item_features = read_matrix(member(j, "item_features", where), where + "/item_features");
  if (spec.item_features.size() != spec.weights.size()) {
    schema_error(where + "/item_features", "expected " + std::to_string(spec.weights.size()) + " rows, got " +
                                               std::to_string(spec.item_features.size()));
  }
  return spec;
}

json knapsack_to_json(const KnapsackSpec& spec) {
  return {{"weights", spec.weights}, {"capacity", spec.capacity}, {"item_features", spec.item_features}};
}

RunConfig run_config_from_json(const json& j) {
  if (!j.is_object()) schema_error("", "expected an object");
  RunConfig cfg;
  if (j.contains("schedule")) {
    const json& s = j["schedule"];
    const std::string kind = read_string(member(s, "kind", "/schedule"), "/schedule/kind");
    if (kind == "inverse_sqrt") {
      cfg.schedule.kind = StepSchedule::Kind::kInverseSqrt;
    } else if (kind == "harmonic") {
      cfg.schedule.kind = StepSchedule::Kind::kHarmonic;
    } else {
      schema_error("/schedule/kind", "unknown schedule '" + kind + "'");
    }
    cfg.schedule.alpha0 = read_number(member(s, "alpha0", "/schedule"), "/schedule/alpha0");
  }
  if (j.contains("max_iters")) cfg.max_iters = read_unsigned(j["max_iters"], "/max_iters");
  if (j.contains("target_eps") && !j["target_eps"].is_null()) {
    cfg.target_eps = read_number(j["target_eps"], "/target_eps");
  }
  if (j.contains("tie_tol")) cfg.tie_tol = read_number(j["tie_tol"], "/tie_tol");
  if (j.contains("seed")) cfg.seed = read_unsigned(j["seed"], "/seed");
  if (j.contains("threads")) cfg.threads = read_unsigned(j["threads"], "/threads");
  if (j.contains("init")) {
    const json& init = j["init"];
    if (init.is_array()) {
      cfg.init = InitKind::kExplicit;
      cfg.phi1 = read_vector(init, "/init");
    } else {
      const std::string kind = read_string(init, "/init");
      if (kind == "zero") {
        cfg.init = InitKind::kProjectedZero;
      } else if (kind == "random") {
        cfg.init = InitKind::kRandom;
      } else {
        schema_error("/init", "expected \"zero\", \"random\" or a vector");
      }
    }
  }
  try {
    cfg.check();
  } catch (const Error& e) {
    schema_error("", e.what());
  }
  return cfg;
}

json run_config_to_json(const RunConfig& cfg) {
  json j;
  j["schedule"] = {{"kind", cfg.schedule.kind == StepSchedule::Kind::kInverseSqrt ? "inverse_sqrt" : "harmonic"},
                   {"alpha0", cfg.schedule.alpha0}};
  j["max_iters"] = cfg.max_iters;
  j["target_eps"] = cfg.target_eps ? json(*cfg.target_eps) : json(nullptr);
  j["tie_tol"] = cfg.tie_tol;
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  switch (cfg.init) {
    case InitKind::kProjectedZero:
      j["init"] = "zero";
      break;
    case InitKind::kRandom:
      j["init"] = "random";
      break;
    case InitKind::kExplicit:
      j["init"] = cfg.phi1;
      break;
  }
  return j;
}

RunConfig load_run_config(const fs::path& path) { return run_config_from_json(read_json_file(path)); }

Manifest manifest_from_json(const json& j) {
  Manifest m;
  m.seed = read_unsigned(member(j, "seed", ""), "/seed");
  m.phi0 = read_vector(member(j, "phi0", ""), "/phi0");
  if (j.contains("tie_tol")) m.tie_tol = read_number(j["tie_tol"], "/tie_tol");
  if (j.contains("feasible") && !j["feasible"].is_null()) {
    try {
      m.feasible = feasible_from_json(j["feasible"]);
    } catch (const Error& e) {
      fail_validation(std::string("in /feasible: ") + e.what());
    }
  }
  return m;
}

json manifest_to_json(const Manifest& m) {
  json j;
  j["seed"] = m.seed;
  j["phi0"] = m.phi0;
  j["tie_tol"] = m.tie_tol;
  j["feasible"] = m.feasible ? feasible_to_json(*m.feasible) : json(nullptr);
  return j;
}

Manifest load_manifest(const fs::path& path) { return manifest_from_json(read_json_file(path)); }

std::string runlog_csv(const RunLog& log) {
  std::string out = "k,F,grad_norm";
  const std::size_t d = log.records.empty() ? 0 : log.records.front().phi.size();
  for (std::size_t j = 0; j < d; ++j) out += ",phi_" + std::to_string(j);
  out += "\n";
  for (const auto& r : log.records) {
    out += std::to_string(r.k) + "," + format_number(r.objective) + "," + format_number(r.grad_norm);
    for (double x : r.phi) out += "," + format_number(x);
    out += "\n";
  }
  return out;
}

void write_runlog_csv(const RunLog& log, const fs::path& path) { write_text_file(path, runlog_csv(log)); }

namespace {

double parse_double(std::string_view field, std::size_t line) {
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), x);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    fail_validation("run log line " + std::to_string(line) + ": bad number '" + std::string(field) + "'");
  }
  return x;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    fields.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

}  // namespace

RunLog parse_runlog_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) fail_validation("run log is empty");
  const auto header = split_commas(line);
  if (header.size() < 4 || header[0] != "k" || header[1] != "F" || header[2] != "grad_norm") {
    fail_validation("run log header must be k,F,grad_norm,phi_0..");
  }
  const std::size_t d = header.size() - 3;
  RunLog log;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_commas(line);
    if (fields.size() != header.size()) {
      fail_validation("run log line " + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " fields");
    }
    IterationRecord rec;
    rec.k = static_cast<std::size_t>(parse_double(fields[0], line_no));
    rec.objective = parse_double(fields[1], line_no);
    rec.grad_norm = parse_double(fields[2], line_no);
    rec.phi.reserve(d);
    for (std::size_t j = 0; j < d; ++j) rec.phi.push_back(parse_double(fields[3 + j], line_no));
    log.records.push_back(std::move(rec));
  }
  if (log.records.empty()) fail_validation("run log has no records");
  finalize_best(log);
  return log;
}

RunLog load_runlog_csv(const fs::path& path) { return parse_runlog_csv(read_text_file(path)); }

json summary_to_json(const RunLog& log) {
  return {{"best_phi", log.best_phi},
          {"best_F", log.best_F},
          {"best_k", log.best_k},
          {"iters_run", log.iters_run},
          {"warnings", log.warnings}};
}

json report_to_json(const GapReport& report, double eps,
                    const std::optional<EquivalenceResult>& equivalence) {
  json j;
  j["gaps"] = report.gaps;
  j["F"] = report.objective;
  j["eps"] = eps;
  j["bound_eN"] = eps * static_cast<double>(report.n());
  if (equivalence) {
    j["equivalence"] = {{"subgrad_zero", equivalence->subgrad_zero},
                        {"actions_equal", equivalence->actions_equal},
                        {"w1_zero", equivalence->w1_zero},
                        {"unanimous", equivalence->unanimous()}};
  } else {
    j["equivalence"] = nullptr;
  }
  return j;
}

}  // namespace wirl::io

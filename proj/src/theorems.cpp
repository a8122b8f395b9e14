#include "wirl/theorems.hpp"

#include <algorithm>
#include <sstream>

#include "wirl/error.hpp"
#include "wirl/solvers.hpp"
#include "wirl/wasserstein.hpp"

namespace wirl {

void require_expert_consistent(const Weights& phi0, const TrajectorySet& data,
                               const InstanceMap& instances, double tie_tol) {
  require_valid(data, instances);
  for (std::size_t n = 0; n < data.size(); ++n) {
    const auto& t = data.trajectories[n];
    const Vector expected = solve(phi0, instances.at(t.instance_id), tie_tol).chosen;
    if (expected != t.action) {
      fail_validation("hypothesis violation at n=" + std::to_string(n) + ": expert action " +
                      format_vector(t.action) + " differs from a(phi0, s) = " + format_vector(expected));
    }
  }
}

GapReport reward_gap_report(const Weights& phi, const Weights& phi0, const TrajectorySet& data,
                            const InstanceMap& instances, double tie_tol) {
  require_expert_consistent(phi0, data, instances, tie_tol);
  const Evaluation ev = evaluate(phi, data, instances, tie_tol);
  GapReport report;
  report.objective = ev.objective;
  report.gaps.reserve(data.size());
  for (std::size_t n = 0; n < data.size(); ++n) {
    const Vector& expert = data.trajectories[n].action;
    report.gaps.push_back(dot(phi.values(), ev.learner_actions[n]) - dot(phi.values(), expert));
  }
  return report;
}

namespace {

std::vector<std::string> bound_violations(const GapReport& report, double eps, bool enforce_upper) {
  std::vector<std::string> out;
  const double bound = eps * static_cast<double>(report.n());
  for (std::size_t n = 0; n < report.n(); ++n) {
    const double g = report.gaps[n];
    if (g < -kGapDust) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "gap g_" << n << " = " << g << " is negative";
      out.push_back(msg.str());
    }
    if (enforce_upper && !(g < bound + kGapDust)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "gap g_" << n << " = " << g << " >= eps*N = " << bound << " although F = " << report.objective
          << " < eps";
      out.push_back(msg.str());
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> gap_bound_violations(const GapReport& report, double eps) {
  return bound_violations(report, eps, report.objective < eps);
}

EquivalenceResult equivalence_check(const Weights& phi, const Weights& phi0, const TrajectorySet& data,
                                    const InstanceMap& instances) {
  require_expert_consistent(phi0, data, instances, 0.0);

  EquivalenceResult result;
  const Evaluation ev = evaluate(phi, data, instances, 0.0);
  result.subgrad_zero = std::ranges::all_of(ev.subgradient, [](double g) { return g == 0.0; });

  std::vector<Vector> expert_actions;
  expert_actions.reserve(data.size());
  result.actions_equal = true;
  for (std::size_t n = 0; n < data.size(); ++n) {
    const Instance& inst = instances.at(data.trajectories[n].instance_id);
    const Vector learner = solve(phi, inst, 0.0).chosen;
    Vector expert = solve(phi0, inst, 0.0).chosen;
    if (learner != expert) result.actions_equal = false;
    expert_actions.push_back(std::move(expert));
  }

  const EmpiricalMeasure learner_measure(ev.learner_actions);
  const EmpiricalMeasure expert_measure(std::move(expert_actions));
  result.w1_zero = w1_exact(learner_measure, expert_measure) == 0.0;
  return result;
}

std::optional<CorollaryResult> corollary_check(const RunLog& log, const Weights& phi0,
                                               const TrajectorySet& data, const InstanceMap& instances,
                                               double eps, double tie_tol) {
  const auto trace = log.best_trace();
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (!(trace[i] < eps)) continue;
    CorollaryResult result;
    result.k = log.records[i].k;
    result.best_phi = log.records[log.best_index(i + 1)].phi;
    result.report = reward_gap_report(Weights(result.best_phi), phi0, data, instances, tie_tol);
    const auto violations = bound_violations(result.report, eps, true);
    if (!violations.empty()) {
      fail_theorem("corollary bound failed at k=" + std::to_string(result.k) + ": " + violations.front());
    }
    return result;
  }
  return std::nullopt;
}

}  // namespace wirl

#pragma once

// Executable checks of the imitation results:
//  - reward imitation: with expert actions a_n = a(phi0, s_n), every gap
//    g_n = phi^T a(phi, s_n) - phi^T a(phi0, s_n) lies in [0, eps*N) once
//    F(phi) < eps;
//  - the same bound along the best iterates of a training run;
//  - exact action imitation: with the lexicographic solver, a zero
//    subgradient, per-instance action equality, and zero Wasserstein distance
//    between learner and expert action measures are equivalent.

#include <optional>
#include <string>
#include <vector>

#include "wirl/domain.hpp"
#include "wirl/learner.hpp"

namespace wirl {

/// Dust threshold for the gap bounds.
inline constexpr double kGapDust = 1e-12;

/// Throws a validation Error naming the first n where the expert action is
/// not solve(phi0, s_n, tie_tol).chosen.
void require_expert_consistent(const Weights& phi0, const TrajectorySet& data,
                               const InstanceMap& instances, double tie_tol);

struct GapReport {
  std::vector<double> gaps;
  double objective = 0.0;  // F(phi)
  std::size_t n() const noexcept { return gaps.size(); }
};

GapReport reward_gap_report(const Weights& phi, const Weights& phi0, const TrajectorySet& data,
                            const InstanceMap& instances, double tie_tol = 0.0);

/// Human-readable descriptions of every broken bound: g_n >= -dust always,
/// and g_n < eps*N + dust whenever F < eps.
std::vector<std::string> gap_bound_violations(const GapReport& report, double eps);

struct EquivalenceResult {
  bool subgrad_zero = false;
  bool actions_equal = false;
  bool w1_zero = false;

  bool unanimous() const noexcept {
    return subgrad_zero == actions_equal && actions_equal == w1_zero;
  }
};

/// Evaluates the three conditions independently with tie_tol = 0. Does not
/// throw on disagreement; callers decide.
EquivalenceResult equivalence_check(const Weights& phi, const Weights& phi0, const TrajectorySet& data,
                                    const InstanceMap& instances);

struct CorollaryResult {
  std::size_t k = 0;  // first iteration with F(phi_k^best) < eps
  Vector best_phi;
  GapReport report;
};

/// Scans the run for the first k with F(phi_k^best) < eps and checks the
/// per-n gap bound at phi_k^best. Returns nullopt when eps is never reached.
/// Throws a theorem Error if the bound fails at that k.
std::optional<CorollaryResult> corollary_check(const RunLog& log, const Weights& phi0,
                                               const TrajectorySet& data, const InstanceMap& instances,
                                               double eps, double tie_tol = 0.0);

}  // namespace wirl

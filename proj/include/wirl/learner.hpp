#pragma once

// Intention learning: the inverse objective
//   F(phi) = (1/N) sum_n phi^T a(phi, s_n) - (1/N) sum_n phi^T a_n,
// its subgradient (1/N) sum_n (a(phi, s_n) - a_n), and projected
// subgradient descent with a nonsummable diminishing step size.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wirl/domain.hpp"
#include "wirl/solvers.hpp"

namespace wirl {

struct StepSchedule {
  enum class Kind { kInverseSqrt, kHarmonic };

  Kind kind = Kind::kInverseSqrt;
  double alpha0 = 1.0;

  /// alpha0 / sqrt(k) or alpha0 / k, for k >= 1.
  double rate(std::size_t k) const;
};

enum class InitKind { kProjectedZero, kRandom, kExplicit };

struct RunConfig {
  StepSchedule schedule;
  std::size_t max_iters = 1000;
  std::optional<double> target_eps;
  double tie_tol = kDefaultTieTol;
  std::uint64_t seed = 0;
  InitKind init = InitKind::kProjectedZero;
  Vector phi1;  // used with InitKind::kExplicit
  std::size_t threads = 1;

  void check() const;
};

/// One solver pass over the data at a fixed phi.
struct Evaluation {
  double objective = 0.0;
  Vector subgradient;
  std::vector<Vector> learner_actions;  // a(phi, s_n) per trajectory
};

Evaluation evaluate(const Weights& phi, const TrajectorySet& data, const InstanceMap& instances,
                    double tie_tol, std::size_t threads = 1);

double objective_F(const Weights& phi, const TrajectorySet& data, const InstanceMap& instances,
                   double tie_tol = kDefaultTieTol);

Vector subgradient(const Weights& phi, const TrajectorySet& data, const InstanceMap& instances,
                   double tie_tol = kDefaultTieTol);

struct IterationRecord {
  std::size_t k = 0;
  Vector phi;
  double objective = 0.0;
  double grad_norm = 0.0;
  Vector subgradient;  // empty when loaded from CSV
};

struct RunLog {
  std::vector<IterationRecord> records;
  Vector best_phi;
  double best_F = 0.0;
  std::size_t best_k = 0;
  std::size_t iters_run = 0;
  std::vector<std::string> warnings;

  /// min_{j <= k} F(phi_j) for each logged k.
  std::vector<double> best_trace() const;
  /// Index of phi_k^best (earliest minimizer) among the first `count` records.
  std::size_t best_index(std::size_t count) const;
};

/// Rebuilds best_phi/best_F/best_k/iters_run from records.
void finalize_best(RunLog& log);

/// phi1 per config: explicit vector, project(0), or a seeded draw projected
/// onto the feasible set.
Weights initial_weights(const FeasibleSet& feasible, const RunConfig& cfg);

/// The projected subgradient loop. Logs phi_1..phi_K (fewer on early exit
/// when the best objective drops below target_eps).
RunLog train(const TrajectorySet& data, const InstanceMap& instances, const FeasibleSet& feasible,
             const Weights& phi1, const RunConfig& cfg);

}  // namespace wirl

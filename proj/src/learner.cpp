#include "wirl/learner.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "wirl/error.hpp"
#include "wirl/projection.hpp"

namespace wirl {

double StepSchedule::rate(std::size_t k) const {
  const double kk = static_cast<double>(std::max<std::size_t>(k, 1));
  return kind == Kind::kInverseSqrt ? alpha0 / std::sqrt(kk) : alpha0 / kk;
}

void RunConfig::check() const {
  if (max_iters < 1) fail_validation("max_iters must be >= 1");
  if (!(schedule.alpha0 > 0.0) || !std::isfinite(schedule.alpha0)) {
    fail_validation("schedule alpha0 must be positive");
  }
  if (target_eps && !(*target_eps > 0.0)) fail_validation("target_eps must be positive");
  if (!(tie_tol >= 0.0)) fail_validation("tie_tol must be nonnegative");
  if (threads < 1) fail_validation("threads must be >= 1");
  if (init == InitKind::kExplicit && phi1.empty()) fail_validation("explicit init requires phi1");
}

Evaluation evaluate(const Weights& phi, const TrajectorySet& data, const InstanceMap& instances,
                    double tie_tol, std::size_t threads) {
  require_valid(data, instances);
  const std::size_t n_traj = data.size();
  const std::size_t d = data_dim(data, instances);
  if (phi.dim() != d) {
    fail_validation("weights dimension " + std::to_string(phi.dim()) + " does not match data dimension " +
                    std::to_string(d));
  }

  // Per-n solves are independent; reductions below run in index order so the
  // result does not depend on the thread count.
  std::vector<Vector> chosen(n_traj);
  auto solve_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t n = begin; n < end; ++n) {
      const auto& t = data.trajectories[n];
      chosen[n] = solve(phi, instances.at(t.instance_id), tie_tol).chosen;
    }
  };
  const std::size_t workers = std::min(threads, n_traj);
  if (workers <= 1) {
    solve_range(0, n_traj);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      const std::size_t chunk = (n_traj + workers - 1) / workers;
      for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n_traj, begin + chunk);
        pool.emplace_back([&, w, begin, end] {
          try {
            solve_range(begin, end);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  Evaluation ev;
  ev.subgradient.assign(d, 0.0);
  double total = 0.0;
  for (std::size_t n = 0; n < n_traj; ++n) {
    const Vector& expert = data.trajectories[n].action;
    total += dot(phi.values(), chosen[n]) - dot(phi.values(), expert);
    for (std::size_t j = 0; j < d; ++j) ev.subgradient[j] += chosen[n][j] - expert[j];
  }
  const double count = static_cast<double>(n_traj);
  ev.objective = total / count;
  for (double& g : ev.subgradient) g /= count;
  ev.learner_actions = std::move(chosen);
  return ev;
}

double objective_F(const Weights& phi, const TrajectorySet& data, const InstanceMap& instances,
                   double tie_tol) {
  return evaluate(phi, data, instances, tie_tol).objective;
}

Vector subgradient(const Weights& phi, const TrajectorySet& data, const InstanceMap& instances,
                   double tie_tol) {
  return evaluate(phi, data, instances, tie_tol).subgradient;
}

std::vector<double> RunLog::best_trace() const {
  std::vector<double> trace;
  trace.reserve(records.size());
  for (const auto& r : records) {
    trace.push_back(trace.empty() ? r.objective : std::min(trace.back(), r.objective));
  }
  return trace;
}

std::size_t RunLog::best_index(std::size_t count) const {
  count = std::min(count, records.size());
  std::size_t best = 0;
  for (std::size_t i = 1; i < count; ++i) {
    if (records[i].objective < records[best].objective) best = i;
  }
  return best;
}

void finalize_best(RunLog& log) {
  log.iters_run = log.records.size();
  if (log.records.empty()) return;
  const std::size_t i = log.best_index(log.records.size());
  log.best_phi = log.records[i].phi;
  log.best_F = log.records[i].objective;
  log.best_k = log.records[i].k;
}

Weights initial_weights(const FeasibleSet& feasible, const RunConfig& cfg) {
  const std::size_t d = feasible.dim();
  switch (cfg.init) {
    case InitKind::kExplicit:
      return Weights(cfg.phi1);
    case InitKind::kProjectedZero:
      return Weights(project(feasible, Vector(d, 0.0)));
    case InitKind::kRandom:
      break;
  }
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Vector draw(d);
  struct {
    std::mt19937_64& rng;
    std::uniform_real_distribution<double>& unit;
    Vector& draw;
    void operator()(const Box& b) {
      for (std::size_t i = 0; i < draw.size(); ++i) {
        draw[i] = b.lo[i] + 0.5 * (unit(rng) + 1.0) * (b.hi[i] - b.lo[i]);
      }
    }
    // A point on the sphere: the farthest the start can be from the center.
    void operator()(const Ball& b) {
      for (double& x : draw) x = unit(rng);
      const double len = norm2(draw);
      for (std::size_t i = 0; i < draw.size(); ++i) {
        draw[i] = b.center[i] + (len > 0.0 ? b.radius * draw[i] / len : 0.0);
      }
    }
    void operator()(const Simplex&) {
      for (double& x : draw) x = 0.5 * (unit(rng) + 1.0);
    }
  } sampler{rng, unit, draw};
  std::visit(sampler, feasible.kind());
  return Weights(project(feasible, draw));
}

RunLog train(const TrajectorySet& data, const InstanceMap& instances, const FeasibleSet& feasible,
             const Weights& phi1, const RunConfig& cfg) {
  cfg.check();
  require_valid(data, instances);
  if (phi1.dim() != feasible.dim() || feasible.dim() != data_dim(data, instances)) {
    fail_validation("phi1, feasible set and data must share a dimension");
  }

  RunLog log;
  Vector phi = phi1.values();
  if (!contains(feasible, phi)) {
    log.warnings.push_back("phi1 " + format_vector(phi) + " is outside the feasible set; projected");
    phi = project(feasible, phi);
  }

  for (std::size_t k = 1; k <= cfg.max_iters; ++k) {
    Evaluation ev;
    try {
      ev = evaluate(Weights(phi), data, instances, cfg.tie_tol, cfg.threads);
    } catch (const Error& e) {
      throw Error(e.code(), "iteration " + std::to_string(k) + ": " + e.what());
    }
    IterationRecord rec{k, phi, ev.objective, norm2(ev.subgradient), ev.subgradient};
    if (log.records.empty() || rec.objective < log.best_F) {
      log.best_F = rec.objective;
      log.best_phi = rec.phi;
      log.best_k = k;
    }
    log.records.push_back(std::move(rec));
    if (cfg.target_eps && log.best_F < *cfg.target_eps) break;
    if (k == cfg.max_iters) break;

    const double alpha = cfg.schedule.rate(k);
    Vector step(phi.size());
    for (std::size_t j = 0; j < phi.size(); ++j) step[j] = phi[j] - alpha * ev.subgradient[j];
    try {
      phi = project(feasible, step);
    } catch (const Error& e) {
      throw Error(e.code(), "iteration " + std::to_string(k) + ": " + e.what());
    }
  }
  log.iters_run = log.records.size();
  return log;
}

}  // namespace wirl

#include "doctest.h"
#include "test_support.hpp"
#include "wirl/error.hpp"
#include "wirl/learner.hpp"
#include "wirl/projection.hpp"

using namespace wirl;
using namespace wirl::testing;

namespace {

Problem one_dim_problem() {
  Problem p;
  p.instances.emplace("s", Instance("s", nullptr, {{0}, {1}}));
  // Optimal under phi0 = (-1).
  p.data.trajectories.push_back({"s", {0}});
  return p;
}

Problem ball_problem() {
  Rng rng(2024);
  return planted_problem(rng, {0.6, 0.8}, 3, 4, -5, 5);
}

}  // namespace

TEST_CASE("step schedules") {
  const StepSchedule sqrt_sched{StepSchedule::Kind::kInverseSqrt, 2.0};
  CHECK(sqrt_sched.rate(1) == 2.0);
  CHECK(sqrt_sched.rate(4) == 1.0);
  const StepSchedule harmonic{StepSchedule::Kind::kHarmonic, 1.0};
  CHECK(harmonic.rate(4) == 0.25);
}

TEST_CASE("objective and subgradient: one-dimensional example") {
  const auto p = one_dim_problem();
  CHECK(objective_F(Weights({1}), p.data, p.instances) == 1.0);
  CHECK(subgradient(Weights({1}), p.data, p.instances) == Vector{1});
  CHECK(objective_F(Weights({-1}), p.data, p.instances) == 0.0);
  CHECK(subgradient(Weights({-1}), p.data, p.instances) == Vector{0});
}

TEST_CASE("objective vanishes at the planted weights and is nonnegative elsewhere") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = rand_int(rng, 1, 4);
    const Vector phi0 = rand_int_vector(rng, d, -3, 3);
    const auto p = planted_problem(rng, phi0, rand_int(rng, 1, 6), rand_int(rng, 1, 8), -5, 5);
    CHECK(objective_F(Weights(phi0), p.data, p.instances, 0.0) == 0.0);
    for (double g : subgradient(Weights(phi0), p.data, p.instances, 0.0)) CHECK(g == 0.0);
    const Vector phi = rand_real_vector(rng, d, -2, 2);
    CHECK(objective_F(Weights(phi), p.data, p.instances, 0.0) >= 0.0);
  }
}

TEST_CASE("subgradient inequality spot checks") {
  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = rand_int(rng, 1, 4);
    const auto p = planted_problem(rng, rand_real_vector(rng, d, -1, 1), 4, 6, -5, 5);
    const Vector phi = rand_real_vector(rng, d, -2, 2);
    const Vector psi = rand_real_vector(rng, d, -2, 2);
    const Vector g = subgradient(Weights(phi), p.data, p.instances);
    double rhs = objective_F(Weights(phi), p.data, p.instances);
    for (std::size_t j = 0; j < d; ++j) rhs += g[j] * (psi[j] - phi[j]);
    CHECK(objective_F(Weights(psi), p.data, p.instances) >= rhs - 1e-9);
  }
}

TEST_CASE("evaluate is independent of the thread count") {
  Rng rng(8);
  const auto p = planted_problem(rng, {0.3, -0.2, 0.9}, 17, 12, -9, 9);
  const Weights phi({0.11, 0.7, -0.35});
  const auto serial = evaluate(phi, p.data, p.instances, kDefaultTieTol, 1);
  const auto parallel = evaluate(phi, p.data, p.instances, kDefaultTieTol, 5);
  CHECK(serial.objective == parallel.objective);
  CHECK(serial.subgradient == parallel.subgradient);
  CHECK(serial.learner_actions == parallel.learner_actions);
}

TEST_CASE("train: planted start is a fixed point") {
  const auto p = ball_problem();
  RunConfig cfg;
  cfg.max_iters = 20;
  cfg.tie_tol = 0.0;
  const auto log = train(p.data, p.instances, FeasibleSet::ball({0, 0}, 1), Weights({0.6, 0.8}), cfg);
  REQUIRE(log.records.size() == 20);
  for (const auto& r : log.records) {
    CHECK(r.phi == Vector{0.6, 0.8});
    CHECK(r.objective == 0.0);
  }
  CHECK(log.best_F == 0.0);
  CHECK(log.best_k == 1);
}

TEST_CASE("train: unit ball, alpha 0.5/sqrt(k), K=5000 from a point on the sphere") {
  const auto p = ball_problem();
  const auto ball = FeasibleSet::ball({0, 0}, 1);
  RunConfig cfg;
  cfg.schedule = {StepSchedule::Kind::kInverseSqrt, 0.5};
  cfg.max_iters = 5000;
  cfg.init = InitKind::kRandom;
  cfg.seed = 1;
  const Weights phi1 = initial_weights(ball, cfg);
  CHECK(norm2(phi1.values()) == doctest::Approx(1.0));
  const auto log = train(p.data, p.instances, ball, phi1, cfg);
  CHECK(log.iters_run == 5000);
  CHECK(log.best_F <= 1e-3);
  CHECK(log.best_F >= 0.0);

  // Default init is project(Phi, 0) = 0, where F vanishes identically.
  RunConfig zero_cfg = cfg;
  zero_cfg.init = InitKind::kProjectedZero;
  const Weights origin = initial_weights(ball, zero_cfg);
  CHECK(origin.values() == Vector{0, 0});
  CHECK(objective_F(origin, p.data, p.instances) == 0.0);
}

TEST_CASE("train: log invariants") {
  Rng rng(99);
  const auto p = planted_problem(rng, {0.2, -0.5, 0.4}, 6, 10, -6, 6);
  const std::vector<FeasibleSet> sets{FeasibleSet::ball({0, 0, 0}, 1), FeasibleSet::box({-1, -1, -1}, {1, 0.5, 1}),
                                      FeasibleSet::simplex(3)};
  for (const auto& set : sets) {
    RunConfig cfg;
    cfg.max_iters = 300;
    cfg.init = InitKind::kRandom;
    cfg.seed = 3;
    const auto log = train(p.data, p.instances, set, initial_weights(set, cfg), cfg);
    REQUIRE(log.records.size() == 300);
    const auto trace = log.best_trace();
    for (std::size_t i = 0; i < log.records.size(); ++i) {
      const auto& r = log.records[i];
      CHECK(r.k == i + 1);
      CHECK(contains(set, r.phi));
      if (i > 0) CHECK(trace[i] <= trace[i - 1]);
      if (i + 1 < log.records.size()) {
        // Step-then-project from the logged values reproduces the next iterate bit for bit.
        const double alpha = cfg.schedule.rate(r.k);
        Vector step(r.phi.size());
        for (std::size_t j = 0; j < step.size(); ++j) step[j] = r.phi[j] - alpha * r.subgradient[j];
        CHECK(project(set, step) == log.records[i + 1].phi);
      }
    }
    CHECK(log.best_F == trace.back());
    CHECK(log.best_phi == log.records[log.best_k - 1].phi);
    // Earliest minimizer.
    for (std::size_t i = 0; i + 1 < log.best_k; ++i) CHECK(log.records[i].objective > log.best_F);
  }
}

TEST_CASE("train: loop contract") {
  const auto p = ball_problem();
  const auto ball = FeasibleSet::ball({0, 0}, 1);
  RunConfig cfg;
  cfg.init = InitKind::kRandom;
  cfg.seed = 1;

  cfg.max_iters = 1;
  CHECK(train(p.data, p.instances, ball, initial_weights(ball, cfg), cfg).records.size() == 1);

  cfg.max_iters = 5000;
  cfg.target_eps = 1e-2;
  const auto log = train(p.data, p.instances, ball, initial_weights(ball, cfg), cfg);
  CHECK(log.iters_run < 5000);
  CHECK(log.best_trace().back() < 1e-2);
  CHECK(log.best_trace()[log.iters_run - 2] >= 1e-2);
}

TEST_CASE("train: start outside the feasible set is projected with a warning") {
  const auto p = ball_problem();
  RunConfig cfg;
  cfg.max_iters = 2;
  const auto log = train(p.data, p.instances, FeasibleSet::ball({0, 0}, 1), Weights({3, 4}), cfg);
  REQUIRE(log.warnings.size() == 1);
  CHECK(log.records.front().phi[0] == doctest::Approx(0.6));
}

TEST_CASE("train: identical inputs give identical logs across thread counts") {
  Rng rng(12);
  const auto p = planted_problem(rng, {0.5, 0.5}, 9, 8, -4, 4);
  const auto ball = FeasibleSet::ball({0, 0}, 1);
  RunConfig cfg;
  cfg.max_iters = 200;
  cfg.init = InitKind::kRandom;
  cfg.seed = 77;
  const auto a = train(p.data, p.instances, ball, initial_weights(ball, cfg), cfg);
  cfg.threads = 3;
  const auto b = train(p.data, p.instances, ball, initial_weights(ball, cfg), cfg);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].phi == b.records[i].phi);
    CHECK(a.records[i].objective == b.records[i].objective);
  }
}

TEST_CASE("train: invalid inputs") {
  const auto p = ball_problem();
  RunConfig cfg;
  cfg.max_iters = 0;
  CHECK_THROWS_AS(train(p.data, p.instances, FeasibleSet::ball({0, 0}, 1), Weights({0, 0}), cfg), Error);
  cfg.max_iters = 5;
  CHECK_THROWS_AS(train(p.data, p.instances, FeasibleSet::ball({0, 0, 0}, 1), Weights({0, 0, 0}), cfg), Error);
  TrajectorySet bad = p.data;
  bad.trajectories[0].action = {100, 100};
  CHECK_THROWS_AS(train(bad, p.instances, FeasibleSet::ball({0, 0}, 1), Weights({0, 0}), cfg), Error);
}

#include "doctest.h"
#include "test_support.hpp"
#include "wirl/error.hpp"
#include "wirl/solvers.hpp"

using namespace wirl;
using namespace wirl::testing;

TEST_CASE("lex_min") {
  const std::vector<Vector> b{{0, 0}, {1, -1}, {-1, 1}};
  CHECK(lex_min(b) == Vector{-1, 1});
  CHECK(lex_min(std::vector<Vector>{{5}}) == Vector{5});
  CHECK(lex_min(std::vector<Vector>{{1, 2, 3}, {1, 2, 2}, {1, 1, 9}}) == Vector{1, 1, 9});
  CHECK_THROWS_WITH_AS(lex_min(std::vector<Vector>{}), "empty candidate set", Error);
}

TEST_CASE("solve: unique argmax") {
  const Instance inst("s", nullptr, {{0, 0}, {1, -1}, {-1, 1}});
  const auto r = solve(Weights({1, 0}), inst, 0.0);
  CHECK(r.optimal_value == 1.0);
  CHECK(r.optimal_set.size() == 1);
  CHECK(r.chosen == Vector{1, -1});
}

TEST_CASE("solve: zero weights tie everything and pick the lexicographic minimum") {
  const Instance inst("s", nullptr, {{0, 0}, {1, -1}, {-1, 1}});
  const auto r = solve(Weights({0, 0}), inst, 0.0);
  CHECK(r.optimal_value == 0.0);
  CHECK(r.optimal_set.size() == 3);
  CHECK(r.chosen == Vector{-1, 1});
}

TEST_CASE("solve: three-way tie under (1,1)") {
  const Instance inst("s", nullptr, {{2, 0}, {0, 2}, {1, 1}});
  // Brute force: every action scores 2.
  for (const Vector& a : inst.actions()) CHECK(a[0] + a[1] == 2.0);
  const auto r = solve(Weights({1, 1}), inst, 0.0);
  CHECK(r.optimal_value == 2.0);
  CHECK(r.optimal_set.size() == 3);
  CHECK(r.chosen == Vector{0, 2});
}

TEST_CASE("solve: tie tolerance merges near-equal values relative to the optimum") {
  const Instance inst("s", nullptr, {{1000, 0}, {999.9999999, 1}});
  const Weights phi({1, 0});
  CHECK(solve(phi, inst, 0.0).optimal_set.size() == 1);
  const auto r = solve(phi, inst, kDefaultTieTol);
  CHECK(r.optimal_set.size() == 2);
  CHECK(r.chosen == Vector{999.9999999, 1});
}

TEST_CASE("solve: errors") {
  const Instance inst("s", nullptr, {{0, 0}});
  CHECK_THROWS_AS(solve(Weights({1, 0, 0}), inst), Error);
  CHECK_THROWS_AS(solve(Weights({1, 0}), inst, -1.0), Error);
}

TEST_CASE("solve invariants on random instances") {
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t d = rand_int(rng, 1, 4);
    const Instance inst = rand_instance(rng, "s", d, rand_int(rng, 1, 30), -6, 6);
    const Vector phi = rand_int_vector(rng, d, -2, 2);
    const auto r = solve(Weights(phi), inst, 0.0);

    const auto oracle = oracle_argmax(phi, inst.actions());
    CHECK(r.optimal_value == oracle.value);
    CHECK(r.chosen == oracle.chosen);

    // Optimality and lex-minimality within the optimal set.
    for (const Vector& a : inst.actions()) CHECK(dot(phi, r.chosen) >= dot(phi, a));
    for (const Vector& a : r.optimal_set) CHECK_FALSE(lex_less(a, r.chosen));

    // Positive scaling leaves the decision unchanged (c = 2^k keeps products exact).
    Vector scaled = phi;
    for (double& x : scaled) x *= 4.0;
    const auto rs = solve(Weights(scaled), inst, 0.0);
    CHECK(rs.optimal_set == r.optimal_set);
    CHECK(rs.chosen == r.chosen);

    // Determinism.
    const auto again = solve(Weights(phi), inst, 0.0);
    CHECK(again.chosen == r.chosen);
    CHECK(again.optimal_set == r.optimal_set);
  }
}

TEST_CASE("knapsack_instance") {
  SUBCASE("zero capacity leaves only the empty selection") {
    const auto inst = knapsack_instance({{1}, 0, {{3}}}, "k");
    CHECK(inst.actions() == std::vector<Vector>{{0}});
  }
  SUBCASE("all subsets feasible") {
    const auto inst = knapsack_instance({{1, 1}, 2, {{1, 0}, {0, 1}}}, "k");
    std::vector<Vector> got = inst.actions();
    std::ranges::sort(got);
    CHECK(got == std::vector<Vector>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  }
  SUBCASE("capacity cuts subsets; compared against brute-force feasibility") {
    const Vector w{2, 2, 3};
    const double cap = 4;
    const std::vector<Vector> feats{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    std::vector<Vector> expected;
    for (int mask = 0; mask < 8; ++mask) {
      double load = 0;
      Vector f(3, 0);
      for (int i = 0; i < 3; ++i) {
        if (mask & (1 << i)) {
          load += w[i];
          f[i] += 1;
        }
      }
      if (load <= cap) expected.push_back(f);
    }
    std::ranges::sort(expected);
    // {}, {1}, {2}, {3}, {1,2}
    REQUIRE(expected.size() == 5);
    auto got = knapsack_instance({w, cap, feats}, "k").actions();
    std::ranges::sort(got);
    CHECK(got == expected);
  }
  SUBCASE("feature sums that coincide are deduplicated") {
    const auto inst = knapsack_instance({{1, 1}, 1, {{1}, {1}}}, "k");
    CHECK(inst.actions().size() == 2);
  }
  SUBCASE("enumeration bound") {
    KnapsackSpec big{Vector(21, 1.0), 5, std::vector<Vector>(21, Vector{1.0})};
    CHECK_THROWS_WITH_AS(knapsack_instance(big, "k"), doctest::Contains("enumeration bound exceeded"), Error);
  }
}

TEST_CASE("polytope_vertex_instance") {
  const auto square = polytope_vertex_instance({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, "p");
  CHECK(square.actions().size() == 4);
  CHECK(polytope_vertex_instance({{0, 0}, {0, 0}, {1, 1}}, "p").actions().size() == 2);
  CHECK_THROWS_AS(polytope_vertex_instance({}, "p"), Error);

  for (std::size_t d = 1; d <= 6; ++d) {
    std::vector<Vector> vertices;
    Vector phi(d);
    for (std::size_t i = 0; i < d; ++i) {
      Vector e(d, 0.0);
      e[i] = 1.0;
      vertices.push_back(e);
      phi[i] = static_cast<double>(i + 1);
    }
    const auto inst = polytope_vertex_instance(vertices, "simplex");
    CHECK(solve(Weights(phi), inst, 0.0).chosen == oracle_argmax(phi, vertices).chosen);
    CHECK(solve(Weights(phi), inst, 0.0).chosen == vertices.back());
  }
}

#pragma once

// Forward solver a(phi, s): the lexicographically smallest maximizer of
// phi^T a over an instance's finite action set, plus generators that
// materialize action sets from knapsack and polytope descriptions.

#include <span>
#include <string>
#include <vector>

#include "wirl/domain.hpp"

namespace wirl {

/// Relative tie tolerance; scaled by max(1, |optimal value|).
inline constexpr double kDefaultTieTol = 1e-9;

/// Enumeration limit for knapsack instances (2^20 subsets).
inline constexpr std::size_t kMaxKnapsackItems = 20;

/// Strict lexicographic order: compares coordinates left to right.
bool lex_less(std::span<const double> a, std::span<const double> b);

/// Minimum of a nonempty candidate list under the lexicographic order.
Vector lex_min(std::span<const Vector> candidates);

struct ArgmaxResult {
  double optimal_value = 0.0;
  std::vector<Vector> optimal_set;  // in instance order
  Vector chosen;
};

ArgmaxResult solve(const Weights& phi, const Instance& inst, double tie_tol = kDefaultTieTol);

struct KnapsackSpec {
  Vector weights;
  double capacity = 0.0;
  std::vector<Vector> item_features;
};

/// Enumerates every feasible 0/1 selection and returns the instance whose
/// actions are the distinct feature sums.
Instance knapsack_instance(const KnapsackSpec& spec, std::string id,
                           nlohmann::json state = nullptr);

Instance polytope_vertex_instance(std::vector<Vector> vertices, std::string id,
                                  nlohmann::json state = nullptr);

}  // namespace wirl

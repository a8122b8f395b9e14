#include "wirl/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "wirl/error.hpp"

namespace wirl {

bool lex_less(std::span<const double> a, std::span<const double> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Vector lex_min(std::span<const Vector> candidates) {
  if (candidates.empty()) fail_validation("empty candidate set");
  const std::size_t d = candidates.front().size();
  const Vector* best = &candidates.front();
  for (const Vector& c : candidates) {
    if (c.size() != d) fail_validation("lex_min candidates have mixed dimensions");
    if (lex_less(c, *best)) best = &c;
  }
  return *best;
}

ArgmaxResult solve(const Weights& phi, const Instance& inst, double tie_tol) {
  if (phi.dim() != inst.dim()) {
    fail_validation("weights dimension " + std::to_string(phi.dim()) + " does not match instance '" +
                    inst.id() + "' dimension " + std::to_string(inst.dim()));
  }
  if (!(tie_tol >= 0.0)) fail_validation("tie tolerance must be nonnegative");
  for (double x : phi.values()) {
    if (std::isnan(x)) fail_validation("weights contain NaN");
  }

  const auto& actions = inst.actions();
  std::vector<double> values;
  values.reserve(actions.size());
  for (const Vector& a : actions) values.push_back(dot(phi.values(), a));

  ArgmaxResult result;
  result.optimal_value = *std::ranges::max_element(values);
  const double threshold =
      tie_tol == 0.0 ? result.optimal_value
                     : result.optimal_value - tie_tol * std::max(1.0, std::abs(result.optimal_value));
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (values[i] >= threshold) result.optimal_set.push_back(actions[i]);
  }
  result.chosen = lex_min(result.optimal_set);
  return result;
}

Instance knapsack_instance(const KnapsackSpec& spec, std::string id, nlohmann::json state) {
  const std::size_t m = spec.weights.size();
  if (m == 0) fail_validation("knapsack needs at least one item");
  if (m > kMaxKnapsackItems) {
    fail_validation("enumeration bound exceeded: " + std::to_string(m) + " items > " +
                    std::to_string(kMaxKnapsackItems));
  }
  if (spec.item_features.size() != m) fail_validation("knapsack item_features must have one row per item");
  if (!(spec.capacity >= 0.0)) fail_validation("knapsack capacity must be nonnegative");
  for (double w : spec.weights) {
    if (!(w >= 0.0)) fail_validation("knapsack weights must be nonnegative");
  }
  const std::size_t d = spec.item_features.front().size();
  for (const Vector& f : spec.item_features) {
    if (f.size() != d || d == 0) fail_validation("knapsack item_features must share a dimension >= 1");
  }

  std::vector<Vector> sums;
  const std::uint32_t subsets = std::uint32_t{1} << m;
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    double load = 0.0;
    Vector feature(d, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      if ((mask >> i) & 1U) {
        load += spec.weights[i];
        for (std::size_t j = 0; j < d; ++j) feature[j] += spec.item_features[i][j];
      }
    }
    if (load <= spec.capacity) sums.push_back(std::move(feature));
  }
  return Instance(std::move(id), std::move(state), std::move(sums));
}

Instance polytope_vertex_instance(std::vector<Vector> vertices, std::string id, nlohmann::json state) {
  if (vertices.empty()) fail_validation("polytope needs at least one vertex");
  return Instance(std::move(id), std::move(state), std::move(vertices));
}

}  // namespace wirl

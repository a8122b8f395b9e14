#pragma once

// Exact 1-Wasserstein distance between equal-size uniform empirical
// measures, and the linear-dual lower bound obtained from the
// Lipschitz-ball maximizer.

#include <span>
#include <vector>

#include "wirl/domain.hpp"

namespace wirl {

/// Uniform point masses 1/N on N points of a common dimension.
class EmpiricalMeasure {
 public:
  explicit EmpiricalMeasure(std::vector<Vector> points);

  const std::vector<Vector>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  std::size_t dim() const noexcept { return points_.front().size(); }
  Vector mean() const;

 private:
  std::vector<Vector> points_;
};

/// Minimum-cost perfect matching on a square cost matrix (row-major, n*n).
/// Returns assignment[row] = column. O(n^3).
std::vector<std::size_t> solve_assignment(std::span<const double> cost, std::size_t n);

/// min over permutations sigma of (1/N) sum_i ||mu_i - nu_sigma(i)||_2.
double w1_exact(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu);

/// The maximizer of theta^T direction over the ball ||theta|| <= 1/f_lip.
/// Returns the zero vector when direction is zero.
Vector max_theta_in_ball(std::span<const double> direction, double f_lip);

/// (1/f_lip) * ||mean(mu) - mean(nu)||. A lower bound on w1_exact whenever
/// f_lip is at least the Lipschitz constant of the feature map (1 for the
/// action projection).
double dual_gap_lower_bound(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, double f_lip);

/// Lipschitz constant of the feature map f = Proj_A.
constexpr double lipschitz_norm_projection() noexcept { return 1.0; }

}  // namespace wirl

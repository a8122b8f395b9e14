#include "wirl/wasserstein.hpp"

#include <cmath>
#include <limits>

#include "wirl/error.hpp"

namespace wirl {

EmpiricalMeasure::EmpiricalMeasure(std::vector<Vector> points) : points_(std::move(points)) {
  if (points_.empty()) fail_validation("empirical measure needs at least one point");
  const std::size_t d = points_.front().size();
  for (const Vector& p : points_) {
    if (p.size() != d) fail_validation("empirical measure points have mixed dimensions");
  }
}

Vector EmpiricalMeasure::mean() const {
  Vector m(dim(), 0.0);
  for (const Vector& p : points_) {
    for (std::size_t j = 0; j < m.size(); ++j) m[j] += p[j];
  }
  for (double& x : m) x /= static_cast<double>(points_.size());
  return m;
}

// Shortest augmenting path with row/column potentials (Kuhn-Munkres in the
// Jonker-Volgenant formulation). Indices are 1-based internally; slot 0 is
// the virtual root column.
std::vector<std::size_t> solve_assignment(std::span<const double> cost, std::size_t n) {
  if (cost.size() != n * n) fail_validation("assignment cost matrix must be n*n");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = match[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> assignment(n);
  for (std::size_t j = 1; j <= n; ++j) assignment[match[j] - 1] = j - 1;
  return assignment;
}

namespace {

void require_comparable(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu) {
  if (mu.size() != nu.size()) {
    fail_validation("measures must have equal size (" + std::to_string(mu.size()) + " vs " +
                    std::to_string(nu.size()) + ")");
  }
  if (mu.dim() != nu.dim()) fail_validation("measures must have equal dimension");
}

}  // namespace

double w1_exact(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu) {
  require_comparable(mu, nu);
  const std::size_t n = mu.size();
  std::vector<double> cost(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) cost[i * n + j] = distance(mu.points()[i], nu.points()[j]);
  }
  const auto assignment = solve_assignment(cost, n);
  // Sum from the original matrix so matched identical points contribute exact zeros.
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += cost[i * n + assignment[i]];
  return total / static_cast<double>(n);
}

Vector max_theta_in_ball(std::span<const double> direction, double f_lip) {
  if (!(f_lip > 0.0)) fail_validation("Lipschitz constant must be positive");
  Vector theta(direction.begin(), direction.end());
  const double len = norm2(direction);
  if (len == 0.0) return theta;
  for (double& x : theta) x /= len * f_lip;
  return theta;
}

double dual_gap_lower_bound(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, double f_lip) {
  require_comparable(mu, nu);
  if (!(f_lip > 0.0)) fail_validation("Lipschitz constant must be positive");
  const std::size_t n = mu.size();
  Vector diff(mu.dim(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < diff.size(); ++j) diff[j] += mu.points()[i][j] - nu.points()[i][j];
  }
  for (double& x : diff) x /= static_cast<double>(n);
  return norm2(diff) / f_lip;
}

}  // namespace wirl

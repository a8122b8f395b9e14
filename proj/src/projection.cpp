#include "wirl/projection.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "wirl/error.hpp"

namespace wirl {
namespace {

Vector project_box(const Box& box, std::span<const double> v) {
  Vector out(v.begin(), v.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::clamp(out[i], box.lo[i], box.hi[i]);
  return out;
}

Vector project_ball(const Ball& ball, std::span<const double> v) {
  const double r = distance(v, ball.center);
  Vector out(v.begin(), v.end());
  if (r <= ball.radius) return out;
  const double scale = ball.radius / r;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = ball.center[i] + scale * (v[i] - ball.center[i]);
  }
  return out;
}

// Sort-then-threshold: find tau with sum(max(v - tau, 0)) = 1.
Vector project_simplex(std::span<const double> v) {
  Vector sorted(v.begin(), v.end());
  std::ranges::sort(sorted, std::greater<>());
  double running = 0.0;
  double tau = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    running += sorted[j];
    const double candidate = (running - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) tau = candidate;
  }
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(v[i] - tau, 0.0);
  return out;
}

}  // namespace

Vector project(const FeasibleSet& set, std::span<const double> v) {
  if (v.size() != set.dim()) {
    fail_validation("cannot project a " + std::to_string(v.size()) + "-vector onto a " +
                    std::to_string(set.dim()) + "-dimensional " + set.kind_name());
  }
  struct {
    std::span<const double> v;
    Vector operator()(const Box& b) const { return project_box(b, v); }
    Vector operator()(const Ball& b) const { return project_ball(b, v); }
    Vector operator()(const Simplex&) const { return project_simplex(v); }
  } visitor{v};
  return std::visit(visitor, set.kind());
}

bool contains(const FeasibleSet& set, std::span<const double> v, double tol) {
  if (v.size() != set.dim()) return false;
  struct {
    std::span<const double> v;
    double tol;
    bool operator()(const Box& b) const {
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < b.lo[i] - tol || v[i] > b.hi[i] + tol) return false;
      }
      return true;
    }
    bool operator()(const Ball& b) const { return distance(v, b.center) <= b.radius + tol; }
    bool operator()(const Simplex&) const {
      double sum = 0.0;
      for (double x : v) {
        if (x < -tol) return false;
        sum += x;
      }
      return std::abs(sum - 1.0) <= tol;
    }
  } visitor{v, tol};
  return std::visit(visitor, set.kind());
}

}  // namespace wirl

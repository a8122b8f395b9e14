#pragma once

#include <span>

#include "wirl/domain.hpp"

namespace wirl {

/// Absolute tolerance used for membership checks on projected points.
inline constexpr double kMembershipTol = 1e-12;

/// Euclidean projection argmin_{u in set} ||u - v||.
Vector project(const FeasibleSet& set, std::span<const double> v);

bool contains(const FeasibleSet& set, std::span<const double> v, double tol = kMembershipTol);

}  // namespace wirl

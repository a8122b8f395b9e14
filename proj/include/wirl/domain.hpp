#pragma once

// Core value types: weight vectors, instances (finite feature sets), expert
// trajectories, and descriptors of the closed convex parameter set.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace wirl {

using Vector = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);
double distance(std::span<const double> a, std::span<const double> b);

/// Scalarization weights. Entries are finite and the dimension is at least 1.
class Weights {
 public:
  explicit Weights(Vector values);

  const Vector& values() const noexcept { return values_; }
  std::size_t dim() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  friend bool operator==(const Weights&, const Weights&) = default;

 private:
  Vector values_;
};

/// A state together with the finite image of its feasible set in feature
/// space. Actions are deduplicated on construction, keeping the first
/// occurrence of each vector.
class Instance {
 public:
  Instance(std::string id, nlohmann::json state, std::vector<Vector> actions);

  const std::string& id() const noexcept { return id_; }
  const nlohmann::json& state() const noexcept { return state_; }
  const std::vector<Vector>& actions() const noexcept { return actions_; }
  std::size_t dim() const noexcept { return actions_.front().size(); }

  bool contains(std::span<const double> action) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::string id_;
  nlohmann::json state_;
  std::vector<Vector> actions_;
};

using InstanceMap = std::map<std::string, Instance>;

struct Trajectory {
  std::string instance_id;
  Vector action;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

struct TrajectorySet {
  std::vector<Trajectory> trajectories;

  std::size_t size() const noexcept { return trajectories.size(); }
  friend bool operator==(const TrajectorySet&, const TrajectorySet&) = default;
};

struct Box {
  Vector lo;
  Vector hi;
};

struct Ball {
  Vector center;
  double radius = 1.0;
};

/// Probability simplex {u >= 0, sum(u) = 1}.
struct Simplex {
  std::size_t dim = 1;
};

class FeasibleSet {
 public:
  using Kind = std::variant<Box, Ball, Simplex>;

  static FeasibleSet box(Vector lo, Vector hi);
  static FeasibleSet ball(Vector center, double radius);
  static FeasibleSet simplex(std::size_t dim);

  const Kind& kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept;
  std::string kind_name() const;

 private:
  explicit FeasibleSet(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

struct Violation {
  std::size_t index = 0;  // trajectory index; 0 for set-level violations
  std::string rule;
  std::string message;
};

/// Checks the trajectory set against the instance map. Never throws.
std::vector<Violation> validate(const TrajectorySet& ts, const InstanceMap& instances);

/// Throws a validation Error listing every violation when validate() is
/// non-empty.
void require_valid(const TrajectorySet& ts, const InstanceMap& instances);

/// Feature dimension shared by the data; requires a valid set.
std::size_t data_dim(const TrajectorySet& ts, const InstanceMap& instances);

std::string format_vector(std::span<const double> v);

}  // namespace wirl

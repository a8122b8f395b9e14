#include "wirl/domain.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "wirl/error.hpp"

namespace wirl {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kValidation:
      return "validation";
    case ErrorCode::kTheorem:
      return "theorem";
    case ErrorCode::kIo:
      return "io";
  }
  return "unknown";
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

std::string format_vector(std::span<const double> v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ",";
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v[i]);
    out.append(buf, end);
  }
  out += ")";
  return out;
}

Weights::Weights(Vector values) : values_(std::move(values)) {
  if (values_.empty()) fail_validation("weights must have dimension >= 1");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      fail_validation("weights entry " + std::to_string(i) + " is not finite");
    }
  }
}

Instance::Instance(std::string id, nlohmann::json state, std::vector<Vector> actions)
    : id_(std::move(id)), state_(std::move(state)) {
  if (actions.empty()) fail_validation("instance '" + id_ + "' has no actions");
  const std::size_t d = actions.front().size();
  if (d == 0) fail_validation("instance '" + id_ + "' has zero-dimensional actions");
  actions_.reserve(actions.size());
  std::set<Vector> seen;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    auto& a = actions[i];
    if (a.size() != d) {
      fail_validation("instance '" + id_ + "' action " + std::to_string(i) + " has dimension " +
                      std::to_string(a.size()) + ", expected " + std::to_string(d));
    }
    if (!std::ranges::all_of(a, [](double x) { return std::isfinite(x); })) {
      fail_validation("instance '" + id_ + "' action " + std::to_string(i) + " is not finite");
    }
    if (seen.insert(a).second) actions_.push_back(std::move(a));
  }
}

bool Instance::contains(std::span<const double> action) const {
  return std::ranges::any_of(actions_, [&](const Vector& a) {
    return std::ranges::equal(a, action);
  });
}

FeasibleSet FeasibleSet::box(Vector lo, Vector hi) {
  if (lo.empty() || lo.size() != hi.size()) fail_validation("box bounds must share a dimension >= 1");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!std::isfinite(lo[i]) || !std::isfinite(hi[i])) fail_validation("box bounds must be finite");
    if (lo[i] > hi[i]) fail_validation("box requires lo <= hi at index " + std::to_string(i));
  }
  return FeasibleSet(Box{std::move(lo), std::move(hi)});
}

FeasibleSet FeasibleSet::ball(Vector center, double radius) {
  if (center.empty()) fail_validation("ball center must have dimension >= 1");
  if (!std::ranges::all_of(center, [](double x) { return std::isfinite(x); })) {
    fail_validation("ball center must be finite");
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) fail_validation("ball radius must be positive");
  return FeasibleSet(Ball{std::move(center), radius});
}

FeasibleSet FeasibleSet::simplex(std::size_t dim) {
  if (dim < 1) fail_validation("simplex dimension must be >= 1");
  return FeasibleSet(Simplex{dim});
}

std::size_t FeasibleSet::dim() const noexcept {
  struct {
    std::size_t operator()(const Box& b) const { return b.lo.size(); }
    std::size_t operator()(const Ball& b) const { return b.center.size(); }
    std::size_t operator()(const Simplex& s) const { return s.dim; }
  } visitor;
  return std::visit(visitor, kind_);
}

std::string FeasibleSet::kind_name() const {
  struct {
    std::string operator()(const Box&) const { return "box"; }
    std::string operator()(const Ball&) const { return "ball"; }
    std::string operator()(const Simplex&) const { return "simplex"; }
  } visitor;
  return std::visit(visitor, kind_);
}

std::vector<Violation> validate(const TrajectorySet& ts, const InstanceMap& instances) {
  std::vector<Violation> out;
  if (ts.trajectories.empty()) {
    out.push_back({0, "nonempty", "trajectory set is empty"});
    return out;
  }
  std::size_t dim = 0;
  for (std::size_t n = 0; n < ts.trajectories.size(); ++n) {
    const auto& t = ts.trajectories[n];
    auto it = instances.find(t.instance_id);
    if (it == instances.end()) {
      out.push_back({n, "dangling-reference", "unknown instance id '" + t.instance_id + "'"});
      continue;
    }
    const Instance& inst = it->second;
    if (dim == 0) dim = inst.dim();
    if (t.action.size() != inst.dim() || inst.dim() != dim) {
      out.push_back({n, "dimension",
                     "action dimension " + std::to_string(t.action.size()) + " vs instance dimension " +
                         std::to_string(inst.dim()) + " (data dimension " + std::to_string(dim) + ")"});
      continue;
    }
    if (!inst.contains(t.action)) {
      out.push_back({n, "membership",
                     "action " + format_vector(t.action) + " is not an action of instance '" +
                         t.instance_id + "'"});
    }
  }
  return out;
}

void require_valid(const TrajectorySet& ts, const InstanceMap& instances) {
  const auto violations = validate(ts, instances);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << violations.size() << " invalid trajectory record(s): ";
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i > 0) msg << "; ";
    msg << "[" << violations[i].index << "] " << violations[i].rule << ": " << violations[i].message;
  }
  fail_validation(msg.str());
}

std::size_t data_dim(const TrajectorySet& ts, const InstanceMap& instances) {
  return instances.at(ts.trajectories.front().instance_id).dim();
}

}  // namespace wirl

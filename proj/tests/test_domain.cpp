#include "doctest.h"
#include "wirl/domain.hpp"
#include "wirl/error.hpp"

using namespace wirl;

namespace {

InstanceMap one_instance() {
  InstanceMap m;
  m.emplace("s", Instance("s", nullptr, {{0, 0}, {1, 0}}));
  return m;
}

}  // namespace

TEST_CASE("weights reject non-finite entries and empty vectors") {
  CHECK_NOTHROW(Weights({0.5, -1.0}));
  CHECK_THROWS_AS(Weights({}), Error);
  CHECK_THROWS_AS(Weights({1.0, std::nan("")}), Error);
  CHECK_THROWS_AS(Weights({INFINITY}), Error);
}

TEST_CASE("instance deduplicates actions and keeps first-occurrence order") {
  Instance inst("a", nullptr, {{1, 2}, {0, 0}, {1, 2}, {0, 0}, {3, 3}});
  REQUIRE(inst.actions().size() == 3);
  CHECK(inst.actions()[0] == Vector{1, 2});
  CHECK(inst.actions()[1] == Vector{0, 0});
  CHECK(inst.actions()[2] == Vector{3, 3});
  CHECK(inst.contains(Vector{3, 3}));
  CHECK_FALSE(inst.contains(Vector{3, 4}));
}

TEST_CASE("instance invariants") {
  CHECK_THROWS_AS(Instance("e", nullptr, {}), Error);
  CHECK_THROWS_AS(Instance("r", nullptr, {{1, 2}, {1}}), Error);
}

TEST_CASE("validate: well-formed input has no violations") {
  TrajectorySet ts{{{"s", {1, 0}}}};
  CHECK(validate(ts, one_instance()).empty());
}

TEST_CASE("validate: action outside the instance is a membership violation") {
  TrajectorySet ts{{{"s", {9, 9}}}};
  const auto v = validate(ts, one_instance());
  REQUIRE(v.size() == 1);
  CHECK(v[0].index == 0);
  CHECK(v[0].rule == "membership");
}

TEST_CASE("validate: unknown instance id is a dangling reference") {
  TrajectorySet ts{{{"s", {0, 0}}, {"nope", {0, 0}}}};
  const auto v = validate(ts, one_instance());
  REQUIRE(v.size() == 1);
  CHECK(v[0].index == 1);
  CHECK(v[0].rule == "dangling-reference");
}

TEST_CASE("validate: empty set and dimension mismatch") {
  CHECK(validate(TrajectorySet{}, one_instance()).at(0).rule == "nonempty");
  TrajectorySet ts{{{"s", {0, 0, 0}}}};
  CHECK(validate(ts, one_instance()).at(0).rule == "dimension");
  CHECK_THROWS_AS(require_valid(ts, one_instance()), Error);
}

TEST_CASE("feasible set descriptors check their invariants") {
  CHECK_NOTHROW(FeasibleSet::box({0, 0}, {1, 1}));
  CHECK_THROWS_AS(FeasibleSet::box({0, 2}, {1, 1}), Error);
  CHECK_THROWS_AS(FeasibleSet::ball({0}, 0.0), Error);
  CHECK_THROWS_AS(FeasibleSet::simplex(0), Error);
  CHECK(FeasibleSet::simplex(4).dim() == 4);
  CHECK(FeasibleSet::ball({0, 0, 0}, 2).kind_name() == "ball");
}

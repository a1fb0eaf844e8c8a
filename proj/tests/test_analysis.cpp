// Copyright 2026 The paamp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>
#include <regex>
#include <string>
#include <vector>

#include "doctest.h"
#include "paamp/analysis.hpp"
#include "paamp/benchmark.hpp"
#include "paamp/error.hpp"
#include "paamp/planner.hpp"
#include "paamp/report.hpp"

namespace {

using paamp::Error;
using paamp::ErrorCode;
using paamp::Polytope;
using paamp::Scenario;
using paamp::Trajectory;
using paamp::ViolationKind;

Polytope box(double x0, double x1, double y0, double y1) {
  const std::vector<double> lo{x0, y0};
  const std::vector<double> hi{x1, y1};
  return Polytope::box(lo, hi);
}

// Two agents flying parallel lines one unit apart, T = 4.
Scenario lanes() {
  Scenario s;
  s.workspace = box(0, 10, 0, 10);
  s.regions = {box(0, 10, 0, 10)};
  s.agents = {{0, {1.0, 5.0}, {5.0, 5.0}}, {1, {1.0, 6.0}, {5.0, 6.0}}};
  s.params.T = 4;
  return s;
}

std::vector<Trajectory> lane_trajectories() {
  std::vector<Trajectory> t(2);
  for (int a = 0; a < 2; ++a) {
    t[a].agent = a;
    for (int k = 0; k <= 4; ++k) t[a].states.push_back({1.0 + k, 5.0 + a});
  }
  return t;
}

int count(const std::string& text, const std::string& needle) {
  int n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

const paamp::PlanResult& crossing_result() {
  static const paamp::PlanResult r =
      paamp::plan(paamp::builtin_crossing_scenario());
  return r;
}

}  // namespace

TEST_CASE("clean trajectories pass the audit") {
  const auto report = paamp::validate(lanes(), {}, lane_trajectories());
  CHECK(report.passed());
  CHECK(report.min_separation == doctest::Approx(1.0));
}

TEST_CASE("separation violation is located") {
  auto t = lane_trajectories();
  t[1].states[3] = {4.0, 5.5};
  const auto report = paamp::validate(lanes(), {}, t);
  REQUIRE(report.violations.size() == 1);
  const auto& v = report.violations[0];
  CHECK(v.kind == ViolationKind::kSeparation);
  CHECK(v.agents == std::vector<int>{0, 1});
  CHECK(v.step == 3);
  CHECK(v.margin == doctest::Approx(0.5));
}

TEST_CASE("velocity, boundary, region and obstacle violations") {
  Scenario s = lanes();
  auto fast = lane_trajectories();
  fast[0].states[1] = {2.2, 5.0};
  auto r = paamp::validate(s, {}, fast);
  REQUIRE_FALSE(r.passed());
  CHECK(r.violations[0].kind == ViolationKind::kVelocity);
  CHECK(r.violations[0].margin == doctest::Approx(0.2));

  auto off = lane_trajectories();
  off[1].states.back() = {5.0, 6.5};
  r = paamp::validate(s, {}, off);
  REQUIRE_FALSE(r.passed());
  CHECK(r.violations[0].kind == ViolationKind::kBoundary);
  CHECK(r.violations[0].step == 4);

  s.regions.push_back(box(0, 3, 0, 10));
  const std::vector<paamp::SequencePlan> plans{{0, {1, 1, 1, 1}, 0.0},
                                               {1, {0, 0, 0, 0}, 0.0}};
  r = paamp::validate(s, plans, lane_trajectories());
  REQUIRE_FALSE(r.passed());
  CHECK(r.violations[0].kind == ViolationKind::kRegion);
  CHECK(r.violations[0].agents == std::vector<int>{0});
  CHECK(r.violations[0].step == 3);

  Scenario blocked = lanes();
  blocked.obstacles = {box(2.5, 3.5, 4.0, 4.99)};
  r = paamp::validate(blocked, {}, lane_trajectories());
  REQUIRE_FALSE(r.passed());
  CHECK(r.violations[0].kind == ViolationKind::kObstacle);
  CHECK(r.min_clearance == doctest::Approx(0.01));

  auto ragged = lane_trajectories();
  ragged[0].states.pop_back();
  r = paamp::validate(lanes(), {}, ragged);
  REQUIRE_FALSE(r.passed());
  CHECK(r.violations[0].kind == ViolationKind::kShape);
}

TEST_CASE("metrics") {
  const auto m = paamp::metrics(lane_trajectories(), 0.5);
  REQUIRE(m.agents.size() == 2);
  CHECK(m.agents[0].manhattan == doctest::Approx(4.0));
  CHECK(m.agents[0].max_acceleration == 0.0);
  CHECK(m.total_objective == doctest::Approx(8.0));
  CHECK(m.acceleration_defined);

  std::vector<Trajectory> bend(1);
  bend[0].states = {{0, 0}, {1, 0}, {1, 1}};
  const auto b = paamp::metrics(bend, 0.5);
  CHECK(b.agents[0].max_acceleration == doctest::Approx(std::sqrt(2.0)));
  CHECK(b.agents[0].objective == doctest::Approx(2.0 + 0.5 * 2.0));

  std::vector<Trajectory> hop(1);
  hop[0].states = {{0, 0}, {1, 1}};
  CHECK_FALSE(paamp::metrics(hop, 0.5).acceleration_defined);
}

TEST_CASE("Manhattan length never beats the L1 lower bound") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Trajectory> t(1);
    t[0].states.push_back({1.0, 1.0});
    for (int k = 0; k < 6; ++k) t[0].states.push_back({u(rng), u(rng)});
    t[0].states.push_back({9.0, 9.0});
    CHECK(paamp::metrics(t, 0.5).agents[0].manhattan >= 16.0 - 1e-9);
  }
}

TEST_CASE("SVG rendering") {
  const Scenario s = paamp::builtin_crossing_scenario();
  const auto& r = crossing_result();
  const std::string svg = paamp::render_svg(s, r.trajectories);
  CHECK(svg.find("viewBox=\"0 0 10 10\"") != std::string::npos);
  CHECK(count(svg, "<polyline") == 4);
  CHECK(count(svg, "class=\"obstacle\"") == 4);
  CHECK(count(svg, "class=\"region\"") == 6);
  CHECK(count(svg, "class=\"start\"") == 4);
  CHECK(count(svg, "class=\"goal\"") == 4);
  CHECK(std::regex_search(svg, std::regex("class=\"obstacle\"[^>]*fill=\"black\"")));
  CHECK(svg == paamp::render_svg(s, r.trajectories));

  const std::string bare = paamp::render_svg(s, {});
  CHECK(count(bare, "<polyline") == 0);
  CHECK(count(bare, "class=\"obstacle\"") == 4);

  try {
    paamp::write_svg(s, {}, "/nonexistent/dir/out.svg");
    FAIL("expected an I/O error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
}

TEST_CASE("plan document round trip") {
  const Scenario s = paamp::builtin_crossing_scenario();
  const auto& r = crossing_result();
  const std::string text = paamp::plan_to_json(s, r);
  CHECK(text == paamp::plan_to_json(s, r));
  CHECK(text.find("\"agents\"") != std::string::npos);
  CHECK(text.find("\"metrics\"") != std::string::npos);
  CHECK(text.find("\"diagnostics\"") != std::string::npos);
  CHECK(text.find("wall_seconds") == std::string::npos);
  paamp::ReportOptions timed;
  timed.timing = true;
  CHECK(paamp::plan_to_json(s, r, timed).find("wall_seconds") != std::string::npos);

  const paamp::PlanFile file = paamp::parse_plan_json(text);
  CHECK(file.trajectories == r.trajectories);
  REQUIRE(file.plans.size() == r.plans.size());
  for (std::size_t a = 0; a < file.plans.size(); ++a) {
    CHECK(file.plans[a].segments == r.plans[a].segments);
  }
  CHECK(paamp::validate(s, file.plans, file.trajectories).passed());

  CHECK_THROWS_AS(paamp::parse_plan_json("{\"agents\": 3}"), Error);
  CHECK_THROWS_AS(paamp::parse_plan_json("not json"), Error);
}

TEST_CASE("benchmark table formats") {
  paamp::BenchmarkRow fast{12, "paamp", "optimal", 66.5, 528, 64, 812.25, 0.846,
                           false, 300000.0};
  paamp::BenchmarkRow slow{12, "naive", "time-limit", 70.48, 624, 3541,
                           300100.0, 1.0, true, 300000.0};
  const std::string csv = paamp::to_csv({fast, slow});
  CHECK(csv ==
        "T,method,status,objective,binaries,nodes,wall_ms,rho\n"
        "12,paamp,optimal,66.5000,528,64,812.2,0.8460\n"
        "12,naive,time-limit,70.4800,624,3541,>300000,1.0000\n");
  const std::string text = paamp::to_text({fast, slow});
  CHECK(text.find(">300000") != std::string::npos);
  CHECK(count(text, "\n") == 3);
}

TEST_CASE("benchmark rows and infeasibility probe") {
  const Scenario s = paamp::builtin_crossing_scenario();
  paamp::BenchmarkOptions o;
  o.horizons = {12};
  o.naive = false;
  const auto rows = paamp::run_benchmark(s, o);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].method == "paamp");
  CHECK(rows[0].binaries == crossing_result().collision_binaries);
  CHECK(rows[0].rho < 1.0);
  CHECK_FALSE(rows[0].limited);

  const auto probe = paamp::probe_infeasibility(s, 6.0);
  CHECK(probe.proven);
  CHECK(probe.infeasible_seconds <= probe.feasible_seconds);
}

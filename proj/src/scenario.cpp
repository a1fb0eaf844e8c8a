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

#include "paamp/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "paamp/error.hpp"

namespace paamp {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::kValidation, what);
}

void require(bool ok, const std::string& what) {
  if (!ok) invalid(what);
}

// Converts geometry failures into validation errors that name the object.
void check_polytope(const Polytope& p, const std::string& what) {
  require(p.dim() == 2, what + " must be two-dimensional");
  try {
    p.validate();
  } catch (const Error& e) {
    invalid(what + ": " + e.what());
  }
}

bool is_box(const Polytope& p) {
  if (p.dim() != 2 || p.num_facets() != 4) return false;
  const std::vector<std::vector<double>> normals{
      {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  return p.a() == normals;
}

Json polytope_to_json(const Polytope& p) {
  Json j = Json::object();
  if (!p.name().empty()) j["name"] = p.name();
  if (is_box(p)) {
    j["box"] = {-p.b()[1], p.b()[0], -p.b()[3], p.b()[2]};
    return j;
  }
  Json rows = Json::array();
  for (int i = 0; i < p.num_facets(); ++i) {
    Json row = Json::array();
    for (double v : p.a()[i]) row.push_back(v);
    row.push_back(p.b()[i]);
    rows.push_back(row);
  }
  j["halfspaces"] = rows;
  return j;
}

Polytope polytope_from_json(const Json& j, const std::string& what) {
  require(j.is_object(), what + " must be an object");
  const std::string name = j.value("name", std::string());
  const bool has_box = j.contains("box");
  const bool has_rows = j.contains("halfspaces");
  require(has_box != has_rows,
          what + " needs exactly one of 'box' or 'halfspaces'");
  if (has_box) {
    const auto v = j.at("box").get<std::vector<double>>();
    require(v.size() == 4, what + ".box must have 4 numbers");
    const std::vector<double> lo{v[0], v[2]};
    const std::vector<double> hi{v[1], v[3]};
    return Polytope::box(lo, hi, name);
  }
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  for (const auto& row : j.at("halfspaces")) {
    auto v = row.get<std::vector<double>>();
    require(v.size() == 3, what + ".halfspaces rows must be [a1, a2, b]");
    b.push_back(v.back());
    v.pop_back();
    a.push_back(std::move(v));
  }
  return Polytope(std::move(a), std::move(b), name);
}

Point point_from_json(const Json& j, const std::string& what) {
  auto v = j.get<std::vector<double>>();
  require(v.size() == 2, what + " must have 2 coordinates");
  return v;
}

PlanningParams params_from_json(const Json& j) {
  PlanningParams p;
  require(j.is_object(), "params must be an object");
  static const std::set<std::string> known{
      "T",     "v_max",   "d_min", "L",         "d_sep",
      "big_m", "alpha",   "epsilon", "gap",     "k_max",
      "k_candidates", "timeout_s", "adjacency_tol", "all_pairs"};
  for (const auto& [key, value] : j.items()) {
    require(known.contains(key), "unknown parameter '" + key + "'");
  }
  p.T = j.value("T", p.T);
  p.v_max = j.value("v_max", p.v_max);
  p.d_min = j.value("d_min", p.d_min);
  p.L = j.value("L", p.L);
  p.d_sep = j.value("d_sep", p.d_min);
  p.big_m = j.value("big_m", p.big_m);
  p.alpha = j.value("alpha", p.alpha);
  p.epsilon = j.value("epsilon", p.epsilon);
  p.gap = j.value("gap", p.gap);
  p.k_max = j.value("k_max", p.k_max);
  p.k_candidates = j.value("k_candidates", p.k_candidates);
  p.timeout_seconds = j.value("timeout_s", p.timeout_seconds);
  p.adjacency_tol = j.value("adjacency_tol", p.adjacency_tol);
  p.all_pairs = j.value("all_pairs", p.all_pairs);
  return p;
}

Json params_to_json(const PlanningParams& p) {
  Json j = Json::object();
  j["T"] = p.T;
  j["v_max"] = p.v_max;
  j["d_min"] = p.d_min;
  j["L"] = p.L;
  j["d_sep"] = p.d_sep;
  j["big_m"] = p.big_m;
  j["alpha"] = p.alpha;
  j["epsilon"] = p.epsilon;
  j["gap"] = p.gap;
  j["k_max"] = p.k_max;
  j["k_candidates"] = p.k_candidates;
  j["timeout_s"] = p.timeout_seconds;
  j["adjacency_tol"] = p.adjacency_tol;
  j["all_pairs"] = p.all_pairs;
  return j;
}

std::string position(const std::string& text, std::size_t byte) {
  int line = 1;
  int column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

void PlanningParams::validate() const {
  require(T >= 1, "T must be a positive integer");
  require(v_max > 0.0, "v_max must be positive");
  require(d_min > 0.0, "d_min must be positive");
  require(L >= 3, "L must be at least 3");
  require(d_sep > 0.0, "d_sep must be positive");
  require(d_sep <= d_min + 1e-12, "d_sep must not exceed d_min");
  require(big_m > 0.0, "big_m must be positive");
  require(alpha >= 0.0, "alpha must be nonnegative");
  require(epsilon >= 0.0, "epsilon must be nonnegative");
  require(gap >= 0.0, "gap must be nonnegative");
  require(k_max >= 1, "k_max must be a positive integer");
  require(k_candidates >= 1, "k_candidates must be a positive integer");
  require(timeout_seconds > 0.0, "timeout_s must be positive");
  require(adjacency_tol >= 0.0, "adjacency_tol must be nonnegative");
}

std::vector<std::string> Scenario::validate() const {
  std::vector<std::string> warnings;
  params.validate();
  check_polytope(workspace, "workspace");
  require(!regions.empty(), "scenario has no regions");
  for (std::size_t j = 0; j < regions.size(); ++j) {
    check_polytope(regions[j], "region " + std::to_string(j));
  }
  for (std::size_t p = 0; p < obstacles.size(); ++p) {
    const std::string what = "obstacle " + std::to_string(p);
    check_polytope(obstacles[p], what);
    for (const Point& v : vertices_2d(obstacles[p])) {
      require(contains(workspace, v, 1e-9), what + " leaves the workspace");
    }
  }
  require(!agents.empty(), "scenario has no agents");
  std::set<int> ids;
  for (const AgentSpec& a : agents) {
    const std::string what = "agent " + std::to_string(a.id);
    require(ids.insert(a.id).second, what + " is declared twice");
    require(a.start.size() == 2 && a.goal.size() == 2,
            what + " needs 2-D start and goal");
    for (const auto& [point, label] :
         {std::pair{&a.start, "start"}, std::pair{&a.goal, "goal"}}) {
      require(contains(workspace, *point, 1e-9),
              what + " " + label + " is outside the workspace");
      bool covered = false;
      for (const Polytope& r : regions) covered |= contains(r, *point, 1e-9);
      require(covered, what + " " + label + " is not inside any region");
    }
  }
  const auto [lo, hi] = bounding_box(workspace);
  const double diameter = std::hypot(hi[0] - lo[0], hi[1] - lo[1]);
  if (params.big_m <= params.d_sep + diameter) {
    warnings.push_back("big_m " + std::to_string(params.big_m) +
                       " does not exceed d_sep plus workspace diameter " +
                       std::to_string(params.d_sep + diameter));
  }
  return warnings;
}

const AgentSpec& Scenario::agent(int id) const {
  for (const AgentSpec& a : agents) {
    if (a.id == id) return a;
  }
  throw Error(ErrorCode::kInvalidInput, "no agent with id " + std::to_string(id));
}

Polytope clearance_region(const Scenario& s, int region) {
  const Polytope& r = s.regions[region];
  const double eps = s.params.epsilon;
  if (eps <= 0.0) return r;
  std::vector<Polytope> grown;
  for (const Polytope& o : s.obstacles) grown.push_back(inflate(o, eps));
  auto b = r.b();
  for (int f = 0; f < r.num_facets(); ++f) {
    const double pull = eps * norm2(r.a()[f]);
    // The strip of `r` within eps of facet f.
    std::vector<std::vector<double>> a = r.a();
    std::vector<double> strip_b = r.b();
    std::vector<double> flipped = r.a()[f];
    for (double& v : flipped) v = -v;
    a.push_back(flipped);
    strip_b.push_back(-(r.b()[f] - pull));
    const Polytope strip(std::move(a), std::move(strip_b));
    for (const Polytope& g : grown) {
      if (intersects(strip, g, -1e-6)) {
        b[f] -= pull;
        break;
      }
    }
  }
  return Polytope(r.a(), std::move(b), r.name());
}

Scenario parse_scenario(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParse, position(text, e.byte) + ": " + e.what());
  }
  Scenario s;
  try {
    require(root.is_object(), "scenario must be a JSON object");
    for (const auto& [key, value] : root.items()) {
      static const std::set<std::string> known{"workspace", "regions",
                                               "obstacles", "agents", "params"};
      require(known.contains(key), "unknown top-level key '" + key + "'");
    }
    require(root.contains("workspace"), "missing 'workspace'");
    s.workspace = polytope_from_json(root.at("workspace"), "workspace");
    int index = 0;
    for (const auto& r : root.value("regions", Json::array())) {
      s.regions.push_back(
          polytope_from_json(r, "region " + std::to_string(index++)));
    }
    index = 0;
    for (const auto& o : root.value("obstacles", Json::array())) {
      s.obstacles.push_back(
          polytope_from_json(o, "obstacle " + std::to_string(index++)));
    }
    for (const auto& a : root.value("agents", Json::array())) {
      AgentSpec spec;
      spec.id = a.at("id").get<int>();
      spec.start = point_from_json(a.at("start"), "agent start");
      spec.goal = point_from_json(a.at("goal"), "agent goal");
      s.agents.push_back(std::move(spec));
    }
    if (root.contains("params")) s.params = params_from_json(root.at("params"));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kValidation) throw;
    invalid(e.what());
  }
  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str());
}

std::string serialize_scenario(const Scenario& s) {
  Json root = Json::object();
  root["workspace"] = polytope_to_json(s.workspace);
  root["regions"] = Json::array();
  for (const Polytope& r : s.regions) root["regions"].push_back(polytope_to_json(r));
  root["obstacles"] = Json::array();
  for (const Polytope& o : s.obstacles) {
    root["obstacles"].push_back(polytope_to_json(o));
  }
  root["agents"] = Json::array();
  for (const AgentSpec& a : s.agents) {
    root["agents"].push_back({{"id", a.id}, {"start", a.start}, {"goal", a.goal}});
  }
  root["params"] = params_to_json(s.params);
  return root.dump(2) + "\n";
}

Scenario builtin_crossing_scenario() {
  auto box = [](double x0, double x1, double y0, double y1, std::string name) {
    const std::vector<double> lo{x0, y0};
    const std::vector<double> hi{x1, y1};
    return Polytope::box(lo, hi, std::move(name));
  };
  Scenario s;
  s.workspace = box(0, 10, 0, 10, "workspace");
  s.regions = {
      box(0, 2.66, 0, 10, "left"),     box(3.66, 6.33, 0, 10, "center_v"),
      box(7.33, 10, 0, 10, "right"),   box(0, 10, 0, 2.66, "bottom"),
      box(0, 10, 3.66, 6.33, "center_h"), box(0, 10, 7.33, 10, "top"),
  };
  s.obstacles = {
      box(2.66, 3.66, 2.66, 3.66, "lower_left"),
      box(6.33, 7.33, 2.66, 3.66, "lower_right"),
      box(2.66, 3.66, 6.33, 7.33, "upper_left"),
      box(6.33, 7.33, 6.33, 7.33, "upper_right"),
  };
  s.agents = {
      {0, {1, 1}, {9, 9}},
      {1, {9, 1}, {1, 9}},
      {2, {1, 9}, {9, 1}},
      {3, {9, 9}, {1, 1}},
  };
  return s;
}

}  // namespace paamp

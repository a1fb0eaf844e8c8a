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

#include "paamp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "paamp/error.hpp"
#include "paamp/milp/model.hpp"
#include "paamp/milp/simplex.hpp"

namespace paamp {
namespace {

using milp::kInf;
using milp::LpStatus;
using milp::MilpModel;
using milp::Relation;
using milp::Term;

// Free coordinate columns 0..dim-1 plus the rows of each polytope, each row
// relaxed by `tol`.
MilpModel region_lp(int dim, std::initializer_list<const Polytope*> parts,
                    double tol) {
  MilpModel m;
  for (int d = 0; d < dim; ++d) {
    m.add_continuous("x" + std::to_string(d), -kInf, kInf);
  }
  for (const Polytope* p : parts) {
    for (int i = 0; i < p->num_facets(); ++i) {
      std::vector<Term> terms;
      for (int d = 0; d < dim; ++d) terms.push_back({d, p->a()[i][d]});
      m.add_constraint("f" + std::to_string(i), std::move(terms),
                       Relation::kLessEqual, p->b()[i] + tol);
    }
  }
  return m;
}

void check_dim(const Polytope& p, std::size_t n) {
  if (static_cast<std::size_t>(p.dim()) != n) {
    throw Error(ErrorCode::kInvalidInput,
                "dimension mismatch: polytope has " + std::to_string(p.dim()) +
                    ", got " + std::to_string(n));
  }
}

// Optimizer of +/- x_axis over the model; nullopt when not optimal.
milp::LpResult extreme(MilpModel m, int axis, double sign) {
  for (int d = 0; d < m.num_variables(); ++d) m.set_objective(d, 0.0);
  m.set_objective(axis, sign);
  return milp::solve_lp(m);
}

}  // namespace

Polytope::Polytope(std::vector<std::vector<double>> a, std::vector<double> b,
                   std::string name)
    : a_(std::move(a)), b_(std::move(b)), name_(std::move(name)) {
  if (a_.size() != b_.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "polytope '" + name_ + "': row count differs from offsets");
  }
  dim_ = a_.empty() ? 0 : static_cast<int>(a_.front().size());
  for (const auto& row : a_) {
    if (static_cast<int>(row.size()) != dim_) {
      throw Error(ErrorCode::kInvalidInput,
                  "polytope '" + name_ + "': ragged normal matrix");
    }
  }
}

Polytope Polytope::box(std::span<const double> lo, std::span<const double> hi,
                       std::string name) {
  if (lo.size() != hi.size()) {
    throw Error(ErrorCode::kInvalidInput, "box bounds differ in dimension");
  }
  const std::size_t dim = lo.size();
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  for (std::size_t d = 0; d < dim; ++d) {
    std::vector<double> up(dim, 0.0);
    up[d] = 1.0;
    a.push_back(up);
    b.push_back(hi[d]);
    std::vector<double> down(dim, 0.0);
    down[d] = -1.0;
    a.push_back(down);
    b.push_back(-lo[d]);
  }
  return Polytope(std::move(a), std::move(b), std::move(name));
}

void Polytope::validate() const {
  if (dim_ <= 0 || a_.empty()) {
    throw Error(ErrorCode::kInvalidInput, "polytope '" + name_ + "' has no rows");
  }
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (norm2(a_[i]) == 0.0) {
      throw Error(ErrorCode::kInvalidInput,
                  "polytope '" + name_ + "' row " + std::to_string(i) +
                      " is all zero");
    }
    if (!std::isfinite(b_[i])) {
      throw Error(ErrorCode::kInvalidInput,
                  "polytope '" + name_ + "' has a non-finite offset");
    }
  }
  bounding_box(*this);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

bool contains(const Polytope& p, std::span<const double> x, double tol) {
  check_dim(p, x.size());
  for (int i = 0; i < p.num_facets(); ++i) {
    if (dot(p.a()[i], x) > p.b()[i] + tol) return false;
  }
  return true;
}

bool intersects(const Polytope& p, const Polytope& q, double tol) {
  check_dim(p, static_cast<std::size_t>(q.dim()));
  const MilpModel m = region_lp(p.dim(), {&p, &q}, tol);
  return milp::solve_lp(m).status == LpStatus::kOptimal;
}

Polytope intersection(const Polytope& p, const Polytope& q) {
  check_dim(p, static_cast<std::size_t>(q.dim()));
  auto a = p.a();
  auto b = p.b();
  a.insert(a.end(), q.a().begin(), q.a().end());
  b.insert(b.end(), q.b().begin(), q.b().end());
  return Polytope(std::move(a), std::move(b), p.name() + "&" + q.name());
}

Polytope inflate(const Polytope& p, double margin) {
  auto b = p.b();
  for (int i = 0; i < p.num_facets(); ++i) b[i] += margin * norm2(p.a()[i]);
  return Polytope(p.a(), std::move(b), p.name());
}

std::pair<Point, Point> bounding_box(const Polytope& p) {
  const MilpModel m = region_lp(p.dim(), {&p}, 0.0);
  Point lo(p.dim());
  Point hi(p.dim());
  for (int d = 0; d < p.dim(); ++d) {
    for (double sign : {1.0, -1.0}) {
      const milp::LpResult r = extreme(m, d, sign);
      if (r.status == LpStatus::kInfeasible) {
        throw Error(ErrorCode::kInfeasibleGeometry,
                    "polytope '" + p.name() + "' is empty");
      }
      if (r.status == LpStatus::kUnbounded) {
        throw Error(ErrorCode::kInvalidInput,
                    "polytope '" + p.name() + "' is unbounded");
      }
      (sign > 0 ? lo : hi)[d] = r.values[d];
    }
  }
  return {lo, hi};
}

namespace {

// Returns {center, radius}.
std::pair<Point, double> inscribed_ball(const Polytope& p) {
  const int dim = p.dim();
  MilpModel m;
  for (int d = 0; d < dim; ++d) {
    m.add_continuous("x" + std::to_string(d), -kInf, kInf);
  }
  const int r = m.add_continuous("r", 0.0, kInf);
  m.set_objective(r, -1.0);
  for (int i = 0; i < p.num_facets(); ++i) {
    std::vector<Term> terms;
    for (int d = 0; d < dim; ++d) terms.push_back({d, p.a()[i][d]});
    terms.push_back({r, norm2(p.a()[i])});
    m.add_constraint("f" + std::to_string(i), std::move(terms),
                     Relation::kLessEqual, p.b()[i]);
  }
  const milp::LpResult ball = milp::solve_lp(m);
  if (ball.status == LpStatus::kInfeasible) {
    throw Error(ErrorCode::kInfeasibleGeometry,
                "polytope '" + p.name() + "' is empty");
  }
  if (ball.status == LpStatus::kUnbounded) {
    throw Error(ErrorCode::kInvalidInput,
                "polytope '" + p.name() + "' is unbounded");
  }
  const double radius = ball.values[r];

  // Set of all maximizers: shrink every facet by the optimal radius.
  auto b = p.b();
  for (int i = 0; i < p.num_facets(); ++i) {
    b[i] -= radius * norm2(p.a()[i]) - 1e-9;
  }
  const Polytope centers(p.a(), b, p.name());
  const MilpModel cm = region_lp(dim, {&centers}, 0.0);
  Point mid(dim);
  Point mean(dim, 0.0);
  int count = 0;
  for (int d = 0; d < dim; ++d) {
    double lo = 0.0;
    double hi = 0.0;
    for (double sign : {1.0, -1.0}) {
      const milp::LpResult e = extreme(cm, d, sign);
      if (e.status != LpStatus::kOptimal) return {ball.values, radius};
      (sign > 0 ? lo : hi) = e.values[d];
      for (int k = 0; k < dim; ++k) mean[k] += e.values[k];
      ++count;
    }
    mid[d] = 0.5 * (lo + hi);
  }
  if (contains(centers, mid, 1e-7)) return {mid, radius};
  for (double& v : mean) v /= count;
  return {mean, radius};
}

}  // namespace

Point chebyshev_center(const Polytope& p) {
  return inscribed_ball(p).first;
}

double chebyshev_radius(const Polytope& p) {
  return inscribed_ball(p).second;
}

std::vector<Point> vertices_2d(const Polytope& p) {
  if (p.dim() != 2) {
    throw Error(ErrorCode::kInvalidInput, "vertices_2d needs a 2-D polytope");
  }
  std::vector<Point> pts;
  const auto& a = p.a();
  const auto& b = p.b();
  for (int i = 0; i < p.num_facets(); ++i) {
    for (int j = i + 1; j < p.num_facets(); ++j) {
      const double det = a[i][0] * a[j][1] - a[i][1] * a[j][0];
      if (std::abs(det) < 1e-12) continue;
      const Point v{(b[i] * a[j][1] - a[i][1] * b[j]) / det,
                    (a[i][0] * b[j] - b[i] * a[j][0]) / det};
      if (!contains(p, v, 1e-9)) continue;
      const bool dup = std::any_of(pts.begin(), pts.end(), [&](const Point& q) {
        return std::abs(q[0] - v[0]) < 1e-9 && std::abs(q[1] - v[1]) < 1e-9;
      });
      if (!dup) pts.push_back(v);
    }
  }
  if (pts.empty()) return pts;
  double cx = 0.0;
  double cy = 0.0;
  for (const Point& v : pts) {
    cx += v[0];
    cy += v[1];
  }
  cx /= static_cast<double>(pts.size());
  cy /= static_cast<double>(pts.size());
  std::sort(pts.begin(), pts.end(), [&](const Point& u, const Point& v) {
    return std::atan2(u[1] - cy, u[0] - cx) < std::atan2(v[1] - cy, v[0] - cx);
  });
  return pts;
}

DirectionSet sample_directions(int count, double d_sep) {
  if (count < 3) {
    throw Error(ErrorCode::kInvalidInput,
                "need at least 3 separating directions, got " +
                    std::to_string(count));
  }
  if (!(d_sep > 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "separation threshold must be > 0");
  }
  DirectionSet set;
  for (int l = 0; l < count; ++l) {
    const double angle = 2.0 * std::numbers::pi * l / count;
    set.directions.push_back({std::cos(angle), std::sin(angle)});
    set.thresholds.push_back(d_sep);
  }
  return set;
}

}  // namespace paamp

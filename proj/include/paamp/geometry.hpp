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

#ifndef PAAMP_GEOMETRY_HPP_
#define PAAMP_GEOMETRY_HPP_

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace paamp {

using Point = std::vector<double>;

inline constexpr double kAdjacencyTol = 1e-9;

// Convex polytope {x | a x <= b} in H-representation. Rows are facet normals
// in workspace units. Construction is cheap and unchecked; `validate()` runs
// the LP-based nonempty/bounded checks.
class Polytope {
 public:
  Polytope() = default;
  Polytope(std::vector<std::vector<double>> a, std::vector<double> b,
           std::string name = {});

  // Axis-aligned box [lo_0, hi_0] x [lo_1, hi_1] x ...
  static Polytope box(std::span<const double> lo, std::span<const double> hi,
                      std::string name = {});

  int dim() const { return dim_; }
  int num_facets() const { return static_cast<int>(b_.size()); }
  const std::vector<std::vector<double>>& a() const { return a_; }
  const std::vector<double>& b() const { return b_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  // Throws Error(kInvalidInput) for zero rows or unboundedness and
  // Error(kInfeasibleGeometry) when empty.
  void validate() const;

  bool operator==(const Polytope& other) const = default;

 private:
  int dim_ = 0;
  std::vector<std::vector<double>> a_;
  std::vector<double> b_;
  std::string name_;
};

struct DirectionSet {
  std::vector<Point> directions;
  std::vector<double> thresholds;

  int size() const { return static_cast<int>(directions.size()); }
};

bool contains(const Polytope& p, std::span<const double> x, double tol = 0.0);

// Phase-1 LP feasibility of the stacked system; closed sets, so touching
// polytopes intersect. `tol` relaxes every row.
bool intersects(const Polytope& p, const Polytope& q,
                double tol = kAdjacencyTol);

// Stacked rows of both polytopes (may be empty).
Polytope intersection(const Polytope& p, const Polytope& q);

// Grows every facet outward by `margin` (Euclidean, per facet).
Polytope inflate(const Polytope& p, double margin);

// Center of the largest inscribed ball. When the maximizer is not unique the
// midpoint of the set of maximizers is returned, so a box yields its center.
// Zero-width polytopes return a point with radius 0.
Point chebyshev_center(const Polytope& p);
double chebyshev_radius(const Polytope& p);

// Coordinate-wise extent by LP; throws when unbounded or empty.
std::pair<Point, Point> bounding_box(const Polytope& p);

// 2-D only: polygon vertices in counter-clockwise order.
std::vector<Point> vertices_2d(const Polytope& p);

// L unit vectors at angles 2 pi l / L, every threshold set to d_sep.
DirectionSet sample_directions(int count, double d_sep);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace paamp

#endif  // PAAMP_GEOMETRY_HPP_

// Copyright 2026 The AugGate Authors.
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


#ifndef AUGGATE_COVERAGE_H_
#define AUGGATE_COVERAGE_H_

#include <array>
#include <span>
#include <vector>

#include "json.hpp"

namespace auggate::coverage {

using Point2 = std::array<double, 2>;
using Point3 = std::array<double, 3>;

// Convex-hull area of a planar point set. Throws PreconditionError naming
// the degeneracy when the points are collinear or fewer than three.
double ConvexHullArea(std::span<const Point2> points);
// Hull vertices in counter-clockwise order, collinear points dropped.
std::vector<Point2> ConvexHull2D(std::span<const Point2> points);

// Convex-hull volume of a point cloud. Throws PreconditionError when the
// points are coplanar or fewer than four.
double ConvexHullVolume(std::span<const Point3> points);

// Mean distance from each point to its nearest other point; zero for fewer
// than two points.
double MeanNearestNeighborDistance(std::span<const std::vector<double>> points);

// Principal-component projection fitted on one point set.
class PcaProjection {
 public:
  // Needs at least two rows of equal dimension >= components.
  static PcaProjection Fit(std::span<const std::vector<double>> rows, int components);

  std::vector<double> Project(std::span<const double> row) const;
  int components() const { return components_; }
  const std::vector<double>& mean() const { return mean_; }
  // Row-major components x input dimension; each row unit length.
  const std::vector<double>& axes() const { return axes_; }

 private:
  int components_ = 0;
  std::vector<double> mean_;
  std::vector<double> axes_;
};

struct CoverageReport {
  int dimension = 2;
  size_t original_count = 0;
  size_t augmented_count = 0;
  double hull_original = 0;
  double hull_combined = 0;
  double increase_percent = 0;
  // Mean nearest-neighbour distance in the projected space.
  double density_original = 0;
  double density_combined = 0;

  nlohmann::json ToJson() const;
};

// Projects originals and augmented vectors with a projection fitted on the
// originals alone and compares the hull of the originals with the hull of
// the union. dimension is 2 or 3.
CoverageReport Coverage(std::span<const std::vector<double>> originals,
                        std::span<const std::vector<double>> augmented, int dimension);

}  // namespace auggate::coverage

#endif  // AUGGATE_COVERAGE_H_

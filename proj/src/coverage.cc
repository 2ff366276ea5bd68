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

#include "auggate/coverage.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <utility>

#include "auggate/error.h"

namespace auggate::coverage {

namespace {

double Cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double Extent2(std::span<const Point2> points) {
  double lo[2] = {points[0][0], points[0][1]};
  double hi[2] = {lo[0], lo[1]};
  for (const Point2& p : points) {
    for (int i = 0; i < 2; ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  }
  return std::max(hi[0] - lo[0], hi[1] - lo[1]);
}

Point3 Sub(const Point3& a, const Point3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Point3 Cross3(const Point3& a, const Point3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double Dot3(const Point3& a, const Point3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double Norm3(const Point3& a) { return std::sqrt(Dot3(a, a)); }

}  // namespace

std::vector<Point2> ConvexHull2D(std::span<const Point2> points) {
  std::vector<Point2> p(points.begin(), points.end());
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) return p;
  std::vector<Point2> hull(2 * p.size());
  size_t k = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && Cross(hull[k - 2], hull[k - 1], p[i]) <= 0) --k;
    hull[k++] = p[i];
  }
  for (size_t i = p.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && Cross(hull[k - 2], hull[k - 1], p[i - 1]) <= 0) --k;
    hull[k++] = p[i - 1];
  }
  hull.resize(k - 1);
  return hull;
}

double ConvexHullArea(std::span<const Point2> points) {
  if (points.size() < 3) {
    throw PreconditionError("degenerate hull: fewer than three points");
  }
  const std::vector<Point2> hull = ConvexHull2D(points);
  double twice = 0.0;
  for (size_t i = 0; i < hull.size(); ++i) {
    const Point2& a = hull[i];
    const Point2& b = hull[(i + 1) % hull.size()];
    twice += a[0] * b[1] - b[0] * a[1];
  }
  const double area = std::fabs(twice) / 2.0;
  const double scale = Extent2(points);
  if (hull.size() < 3 || area <= 1e-12 * scale * scale) {
    throw PreconditionError("degenerate hull: points are collinear");
  }
  return area;
}

double ConvexHullVolume(std::span<const Point3> points) {
  if (points.size() < 4) throw PreconditionError("degenerate hull: fewer than four points");
  const size_t n = points.size();
  double scale = 0.0;
  for (const Point3& p : points) scale = std::max(scale, Norm3(Sub(p, points[0])));
  if (scale == 0.0) throw PreconditionError("degenerate hull: all points coincide");
  const double eps = 1e-12 * scale;

  // Initial tetrahedron from extreme points.
  size_t i1 = 0;
  for (size_t i = 0; i < n; ++i) {
    if (Norm3(Sub(points[i], points[0])) > Norm3(Sub(points[i1], points[0]))) i1 = i;
  }
  const Point3 axis = Sub(points[i1], points[0]);
  size_t i2 = 0;
  double best = -1.0;
  for (size_t i = 0; i < n; ++i) {
    const double d = Norm3(Cross3(axis, Sub(points[i], points[0]))) / Norm3(axis);
    if (d > best) best = d, i2 = i;
  }
  if (best <= eps) throw PreconditionError("degenerate hull: points are collinear");
  const Point3 normal = Cross3(axis, Sub(points[i2], points[0]));
  size_t i3 = 0;
  best = -1.0;
  for (size_t i = 0; i < n; ++i) {
    const double d = std::fabs(Dot3(normal, Sub(points[i], points[0]))) / Norm3(normal);
    if (d > best) best = d, i3 = i;
  }
  if (best <= eps) throw PreconditionError("degenerate hull: points are coplanar");

  using Face = std::array<size_t, 3>;
  std::vector<Face> faces;
  const Point3 centroid = {
      (points[0][0] + points[i1][0] + points[i2][0] + points[i3][0]) / 4,
      (points[0][1] + points[i1][1] + points[i2][1] + points[i3][1]) / 4,
      (points[0][2] + points[i1][2] + points[i2][2] + points[i3][2]) / 4};
  auto face_normal = [&](const Face& f) {
    return Cross3(Sub(points[f[1]], points[f[0]]), Sub(points[f[2]], points[f[0]]));
  };
  auto add_oriented = [&](Face f) {
    if (Dot3(face_normal(f), Sub(centroid, points[f[0]])) > 0) std::swap(f[1], f[2]);
    faces.push_back(f);
  };
  const size_t t[4] = {0, i1, i2, i3};
  add_oriented({t[0], t[1], t[2]});
  add_oriented({t[0], t[1], t[3]});
  add_oriented({t[0], t[2], t[3]});
  add_oriented({t[1], t[2], t[3]});

  auto visible = [&](const Face& f, const Point3& p) {
    const Point3 nrm = face_normal(f);
    const double len = Norm3(nrm);
    return len > 0 && Dot3(nrm, Sub(p, points[f[0]])) / len > eps;
  };

  for (size_t i = 0; i < n; ++i) {
    if (i == t[0] || i == t[1] || i == t[2] || i == t[3]) continue;
    std::vector<bool> lit(faces.size());
    bool any = false;
    for (size_t f = 0; f < faces.size(); ++f) {
      lit[f] = visible(faces[f], points[i]);
      any = any || lit[f];
    }
    if (!any) continue;
    std::set<std::pair<size_t, size_t>> lit_edges;
    for (size_t f = 0; f < faces.size(); ++f) {
      if (!lit[f]) continue;
      for (int e = 0; e < 3; ++e) lit_edges.insert({faces[f][e], faces[f][(e + 1) % 3]});
    }
    std::vector<Face> next;
    std::vector<std::pair<size_t, size_t>> horizon;
    for (size_t f = 0; f < faces.size(); ++f) {
      if (!lit[f]) {
        next.push_back(faces[f]);
        continue;
      }
      for (int e = 0; e < 3; ++e) {
        const size_t a = faces[f][e], b = faces[f][(e + 1) % 3];
        if (!lit_edges.contains({b, a})) horizon.push_back({a, b});
      }
    }
    for (const auto& [a, b] : horizon) next.push_back({a, b, i});
    faces = std::move(next);
  }

  double volume = 0.0;
  for (const Face& f : faces) {
    const Point3 a = Sub(points[f[0]], centroid);
    const Point3 b = Sub(points[f[1]], centroid);
    const Point3 c = Sub(points[f[2]], centroid);
    volume += Dot3(a, Cross3(b, c));
  }
  return std::fabs(volume) / 6.0;
}

double MeanNearestNeighborDistance(std::span<const std::vector<double>> points) {
  if (points.size() < 2) return 0.0;
  double sum = 0.0;
  for (size_t i = 0; i < points.size(); ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < points.size(); ++j) {
      if (i == j) continue;
      double d2 = 0.0;
      for (size_t k = 0; k < points[i].size(); ++k) {
        const double d = points[i][k] - points[j][k];
        d2 += d * d;
      }
      nearest = std::min(nearest, d2);
    }
    sum += std::sqrt(nearest);
  }
  return sum / static_cast<double>(points.size());
}

PcaProjection PcaProjection::Fit(std::span<const std::vector<double>> rows, int components) {
  if (components < 1) throw PreconditionError("projection needs at least one component");
  if (rows.size() < 2) throw PreconditionError("projection needs at least two points");
  const size_t dim = rows.front().size();
  if (dim < static_cast<size_t>(components)) {
    throw PreconditionError("input dimension is below the projection dimension");
  }
  Eigen::MatrixXd x(rows.size(), dim);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim) throw PreconditionError("vectors of mixed dimension");
    for (size_t j = 0; j < dim; ++j) x(i, j) = rows[i][j];
  }
  PcaProjection p;
  p.components_ = components;
  const Eigen::RowVectorXd mean = x.colwise().mean();
  x.rowwise() -= mean;
  p.mean_.assign(mean.data(), mean.data() + dim);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinV);
  const Eigen::MatrixXd& v = svd.matrixV();
  p.axes_.assign(static_cast<size_t>(components) * dim, 0.0);
  for (int c = 0; c < components; ++c) {
    // Fix the sign so the largest-magnitude entry is positive.
    Eigen::Index arg = 0;
    v.col(c).cwiseAbs().maxCoeff(&arg);
    const double sign = v(arg, c) < 0 ? -1.0 : 1.0;
    for (size_t j = 0; j < dim; ++j) p.axes_[c * dim + j] = sign * v(j, c);
  }
  return p;
}

std::vector<double> PcaProjection::Project(std::span<const double> row) const {
  const size_t dim = mean_.size();
  if (row.size() != dim) throw PreconditionError("vector dimension does not match projection");
  std::vector<double> out(components_, 0.0);
  for (int c = 0; c < components_; ++c) {
    double s = 0.0;
    for (size_t j = 0; j < dim; ++j) s += (row[j] - mean_[j]) * axes_[c * dim + j];
    out[c] = s;
  }
  return out;
}

nlohmann::json CoverageReport::ToJson() const {
  return {{"dimension", dimension},
          {"original_count", original_count},
          {"augmented_count", augmented_count},
          {"hull_original", hull_original},
          {"hull_combined", hull_combined},
          {"increase_percent", increase_percent},
          {"density_original", density_original},
          {"density_combined", density_combined}};
}

namespace {

double HullMeasure(const std::vector<std::vector<double>>& projected, int dimension) {
  if (dimension == 2) {
    std::vector<Point2> pts;
    for (const auto& p : projected) pts.push_back({p[0], p[1]});
    return ConvexHullArea(pts);
  }
  std::vector<Point3> pts;
  for (const auto& p : projected) pts.push_back({p[0], p[1], p[2]});
  return ConvexHullVolume(pts);
}

}  // namespace

CoverageReport Coverage(std::span<const std::vector<double>> originals,
                        std::span<const std::vector<double>> augmented, int dimension) {
  if (dimension != 2 && dimension != 3) {
    throw PreconditionError("coverage projection dimension must be 2 or 3");
  }
  if (originals.size() < static_cast<size_t>(dimension) + 1) {
    throw PreconditionError("coverage needs at least " + std::to_string(dimension + 1) +
                            " original vectors");
  }
  const PcaProjection pca = PcaProjection::Fit(originals, dimension);
  std::vector<std::vector<double>> orig, combined;
  for (const auto& v : originals) orig.push_back(pca.Project(v));
  combined = orig;
  for (const auto& v : augmented) combined.push_back(pca.Project(v));

  CoverageReport report;
  report.dimension = dimension;
  report.original_count = originals.size();
  report.augmented_count = augmented.size();
  report.hull_original = HullMeasure(orig, dimension);
  report.hull_combined = augmented.empty() ? report.hull_original
                                           : HullMeasure(combined, dimension);
  report.increase_percent =
      (report.hull_combined - report.hull_original) / report.hull_original * 100.0;
  report.density_original = MeanNearestNeighborDistance(orig);
  report.density_combined = MeanNearestNeighborDistance(combined);
  return report;
}

}  // namespace auggate::coverage

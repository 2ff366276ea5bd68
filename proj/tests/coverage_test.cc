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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "auggate/error.h"
#include "test_support.h"

namespace auggate::coverage {
namespace {

// Brute force: an edge (i, j) is on the hull when every other point lies on its left.
double BruteArea(const std::vector<Point2>& p) {
  std::vector<size_t> verts;
  for (size_t i = 0; i < p.size(); ++i) {
    for (size_t j = 0; j < p.size(); ++j) {
      if (i == j) continue;
      bool edge = true;
      for (size_t k = 0; k < p.size() && edge; ++k) {
        if (k == i || k == j) continue;
        const double c = (p[j][0] - p[i][0]) * (p[k][1] - p[i][1]) -
                         (p[j][1] - p[i][1]) * (p[k][0] - p[i][0]);
        if (c < 0) edge = false;
      }
      if (edge) verts.push_back(i);
    }
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  double cx = 0, cy = 0;
  for (size_t v : verts) cx += p[v][0], cy += p[v][1];
  cx /= verts.size();
  cy /= verts.size();
  std::sort(verts.begin(), verts.end(), [&](size_t a, size_t b) {
    return std::atan2(p[a][1] - cy, p[a][0] - cx) < std::atan2(p[b][1] - cy, p[b][0] - cx);
  });
  double twice = 0;
  for (size_t i = 0; i < verts.size(); ++i) {
    const Point2& a = p[verts[i]];
    const Point2& b = p[verts[(i + 1) % verts.size()]];
    twice += a[0] * b[1] - b[0] * a[1];
  }
  return std::fabs(twice) / 2;
}

// Brute force for points in general position: a triangle is a facet when all
// other points sit on one side; volume is summed as tetrahedra from the centroid.
double BruteVolume(const std::vector<Point3>& p) {
  Point3 c = {0, 0, 0};
  for (const Point3& q : p) {
    for (int d = 0; d < 3; ++d) c[d] += q[d] / p.size();
  }
  auto sub = [](const Point3& a, const Point3& b) {
    return Point3{a[0] - b[0], a[1] - b[1], a[2] - b[2]};
  };
  auto det = [](const Point3& a, const Point3& b, const Point3& d) {
    return a[0] * (b[1] * d[2] - b[2] * d[1]) - a[1] * (b[0] * d[2] - b[2] * d[0]) +
           a[2] * (b[0] * d[1] - b[1] * d[0]);
  };
  double volume = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    for (size_t j = i + 1; j < p.size(); ++j) {
      for (size_t k = j + 1; k < p.size(); ++k) {
        int pos = 0, neg = 0;
        for (size_t m = 0; m < p.size(); ++m) {
          if (m == i || m == j || m == k) continue;
          const double s = det(sub(p[j], p[i]), sub(p[k], p[i]), sub(p[m], p[i]));
          (s > 0 ? pos : neg)++;
        }
        if (pos == 0 || neg == 0) {
          volume += std::fabs(det(sub(p[i], c), sub(p[j], c), sub(p[k], c))) / 6;
        }
      }
    }
  }
  return volume;
}

std::vector<Point2> Random2(std::mt19937_64& gen, size_t n) {
  std::normal_distribution<double> normal(0, 1);
  std::vector<Point2> out(n);
  for (auto& p : out) p = {normal(gen), normal(gen)};
  return out;
}

std::vector<Point3> Random3(std::mt19937_64& gen, size_t n) {
  std::normal_distribution<double> normal(0, 1);
  std::vector<Point3> out(n);
  for (auto& p : out) p = {normal(gen), normal(gen), normal(gen)};
  return out;
}

TEST(HullTest, KnownShapes) {
  std::vector<Point2> square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}, {0.5, 0}};
  EXPECT_DOUBLE_EQ(ConvexHullArea(square), 1.0);
  EXPECT_EQ(ConvexHull2D(square).size(), 4u);
  std::vector<Point3> cube;
  for (int i = 0; i < 8; ++i) cube.push_back({double(i & 1), double((i >> 1) & 1), double(i >> 2)});
  cube.push_back({0.5, 0.5, 0.5});
  EXPECT_NEAR(ConvexHullVolume(cube), 1.0, 1e-12);
}

TEST(HullTest, DegenerateInputsThrow) {
  std::vector<Point2> line = {{0, 0}, {1, 1}, {2, 2}, {3, 3}};
  EXPECT_THROW(ConvexHullArea(line), PreconditionError);
  std::vector<Point2> two = {{0, 0}, {1, 1}};
  EXPECT_THROW(ConvexHullArea(two), PreconditionError);
  std::vector<Point3> flat = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0.3, 0.2, 0}};
  EXPECT_THROW(ConvexHullVolume(flat), PreconditionError);
  std::vector<Point3> same(5, Point3{1, 2, 3});
  EXPECT_THROW(ConvexHullVolume(same), PreconditionError);
}

TEST(HullTest, AreaMatchesBruteForce) {
  std::mt19937_64 gen(102);
  for (int trial = 0; trial < 100; ++trial) {
    auto pts = Random2(gen, 3 + gen() % 40);
    EXPECT_NEAR(ConvexHullArea(pts), BruteArea(pts), 1e-9);
    std::shuffle(pts.begin(), pts.end(), gen);
    EXPECT_NEAR(ConvexHullArea(pts), BruteArea(pts), 1e-9);
  }
}

TEST(HullTest, VolumeMatchesBruteForce) {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 60; ++trial) {
    auto pts = Random3(gen, 4 + gen() % 25);
    EXPECT_NEAR(ConvexHullVolume(pts), BruteVolume(pts), 1e-9);
  }
}

TEST(HullTest, DuplicatePointsChangeNothing) {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 50; ++trial) {
    auto p2 = Random2(gen, 3 + gen() % 20);
    auto p3 = Random3(gen, 4 + gen() % 20);
    const double area = ConvexHullArea(p2), volume = ConvexHullVolume(p3);
    for (int k = 0; k < 5; ++k) {
      p2.push_back(p2[gen() % p2.size()]);
      p3.push_back(p3[gen() % p3.size()]);
    }
    std::shuffle(p2.begin(), p2.end(), gen);
    std::shuffle(p3.begin(), p3.end(), gen);
    EXPECT_NEAR(ConvexHullArea(p2), area, 1e-9);
    EXPECT_NEAR(ConvexHullVolume(p3), volume, 1e-9);
  }
}

std::vector<std::vector<double>> RandomRows(std::mt19937_64& gen, size_t n, size_t dim) {
  std::vector<std::vector<double>> rows;
  for (size_t i = 0; i < n; ++i) rows.push_back(testing::RandomVector(gen, dim));
  return rows;
}

// Strictly positive weights over every original keep the point inside the hull.
std::vector<double> InteriorMix(std::mt19937_64& gen, const std::vector<std::vector<double>>& rows) {
  std::uniform_real_distribution<double> w(0.05, 1.0);
  std::vector<double> weights(rows.size());
  for (double& x : weights) x = w(gen);
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<double> out(rows[0].size(), 0.0);
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < out.size(); ++j) out[j] += weights[i] / total * rows[i][j];
  }
  return out;
}

TEST(CoverageTest, InteriorAdditionsGiveExactlyZero) {
  std::mt19937_64 gen(102);
  for (int dim : {2, 3}) {
    for (int trial = 0; trial < 50; ++trial) {
      auto originals = RandomRows(gen, 8 + gen() % 20, 6);
      std::vector<std::vector<double>> augmented;
      for (int i = 0; i < 15; ++i) augmented.push_back(InteriorMix(gen, originals));
      const CoverageReport r = Coverage(originals, augmented, dim);
      EXPECT_EQ(r.increase_percent, 0.0) << dim << " " << trial;
      EXPECT_EQ(r.hull_combined, r.hull_original);
    }
  }
}

TEST(CoverageTest, EmptyAugmentationGivesZero) {
  std::mt19937_64 gen(3);
  auto originals = RandomRows(gen, 10, 4);
  const CoverageReport r = Coverage(originals, {}, 2);
  EXPECT_EQ(r.increase_percent, 0.0);
  EXPECT_EQ(r.augmented_count, 0u);
}

TEST(CoverageTest, ExteriorAdditionsMatchOracle) {
  std::mt19937_64 gen(11);
  for (int dim : {2, 3}) {
    for (int trial = 0; trial < 30; ++trial) {
      auto originals = RandomRows(gen, 10 + gen() % 10, 5);
      std::vector<std::vector<double>> augmented;
      // Push an original away from the mean so it lands outside the hull.
      std::vector<double> mean(5, 0.0);
      for (const auto& r : originals) {
        for (size_t j = 0; j < 5; ++j) mean[j] += r[j] / originals.size();
      }
      std::vector<size_t> order(originals.size());
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), gen);
      for (int k = 0; k < 3; ++k) {
        const auto& base = originals[order[k]];
        std::vector<double> v(5);
        for (size_t j = 0; j < 5; ++j) v[j] = mean[j] + 3.0 * (base[j] - mean[j]);
        augmented.push_back(v);
      }
      const CoverageReport r = Coverage(originals, augmented, dim);
      const PcaProjection pca = PcaProjection::Fit(originals, dim);
      double orig_oracle, comb_oracle;
      if (dim == 2) {
        std::vector<Point2> o, c;
        for (const auto& v : originals) {
          auto p = pca.Project(v);
          o.push_back({p[0], p[1]});
        }
        c = o;
        for (const auto& v : augmented) {
          auto p = pca.Project(v);
          c.push_back({p[0], p[1]});
        }
        orig_oracle = BruteArea(o);
        comb_oracle = BruteArea(c);
      } else {
        std::vector<Point3> o, c;
        for (const auto& v : originals) {
          auto p = pca.Project(v);
          o.push_back({p[0], p[1], p[2]});
        }
        c = o;
        for (const auto& v : augmented) {
          auto p = pca.Project(v);
          c.push_back({p[0], p[1], p[2]});
        }
        orig_oracle = BruteVolume(o);
        comb_oracle = BruteVolume(c);
      }
      EXPECT_NEAR(r.hull_original, orig_oracle, 1e-9);
      EXPECT_NEAR(r.hull_combined, comb_oracle, 1e-9);
      EXPECT_NEAR(r.increase_percent, (comb_oracle - orig_oracle) / orig_oracle * 100, 1e-9);
      EXPECT_GT(r.increase_percent, 0.0);
    }
  }
}

TEST(CoverageTest, IncreaseIsNeverNegative) {
  std::mt19937_64 gen(2026);
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = 2 + trial % 2;
    auto originals = RandomRows(gen, 6 + gen() % 20, 4 + gen() % 4);
    auto augmented = RandomRows(gen, gen() % 20, originals[0].size());
    EXPECT_GE(Coverage(originals, augmented, dim).increase_percent, 0.0) << trial;
  }
}

TEST(CoverageTest, Preconditions) {
  std::mt19937_64 gen(1);
  auto rows = RandomRows(gen, 3, 4);
  EXPECT_THROW(Coverage(rows, {}, 3), PreconditionError);
  EXPECT_THROW(Coverage(rows, {}, 4), PreconditionError);
  EXPECT_NO_THROW(Coverage(rows, {}, 2));
}

TEST(DensityTest, MeanNearestNeighbour) {
  std::vector<std::vector<double>> pts = {{0, 0}, {3, 4}, {3, 5}};
  // Nearest distances 5, 1, 1.
  EXPECT_DOUBLE_EQ(MeanNearestNeighborDistance(pts), 7.0 / 3);
  std::vector<std::vector<double>> one = {{1, 1}};
  EXPECT_EQ(MeanNearestNeighborDistance(one), 0.0);
}

TEST(PcaTest, AxesOrthonormalAndVarianceOrdered) {
  std::mt19937_64 gen(19);
  for (int trial = 0; trial < 20; ++trial) {
    const size_t dim = 3 + gen() % 6;
    auto rows = RandomRows(gen, 20 + gen() % 20, dim);
    // Stretch the first coordinate so the leading axis is well separated.
    for (auto& r : rows) r[0] *= 5;
    const PcaProjection pca = PcaProjection::Fit(rows, 3);
    const auto& axes = pca.axes();
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        double dot = 0;
        for (size_t j = 0; j < dim; ++j) dot += axes[a * dim + j] * axes[b * dim + j];
        EXPECT_NEAR(dot, a == b ? 1.0 : 0.0, 1e-10);
      }
      // Sign convention: the largest-magnitude entry is positive.
      double big = 0;
      for (size_t j = 0; j < dim; ++j) {
        if (std::fabs(axes[a * dim + j]) > std::fabs(big)) big = axes[a * dim + j];
      }
      EXPECT_GT(big, 0.0);
    }
    std::vector<double> var(3, 0.0), sum(3, 0.0);
    for (const auto& r : rows) {
      auto p = pca.Project(r);
      for (int c = 0; c < 3; ++c) sum[c] += p[c], var[c] += p[c] * p[c];
    }
    for (int c = 0; c < 3; ++c) EXPECT_NEAR(sum[c], 0.0, 1e-9);
    EXPECT_GE(var[0], var[1]);
    EXPECT_GE(var[1], var[2]);
  }
}

TEST(PcaTest, RecoversDominantDirection) {
  std::mt19937_64 gen(23);
  std::normal_distribution<double> normal(0, 1);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 200; ++i) {
    const double t = 10 * normal(gen);
    rows.push_back({t * 0.6 + 0.01 * normal(gen), t * 0.8 + 0.01 * normal(gen),
                    0.01 * normal(gen)});
  }
  const PcaProjection pca = PcaProjection::Fit(rows, 1);
  EXPECT_NEAR(pca.axes()[0], 0.6, 1e-3);
  EXPECT_NEAR(pca.axes()[1], 0.8, 1e-3);
  std::vector<double> bad = {1, 2};
  EXPECT_THROW(pca.Project(bad), PreconditionError);
  EXPECT_THROW(PcaProjection::Fit(rows, 4), PreconditionError);
}

}  // namespace
}  // namespace auggate::coverage

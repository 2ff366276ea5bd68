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

#include "auggate/stats.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <vector>

#include "auggate/error.h"
#include "auggate/util/delimited.h"
#include "auggate/util/text.h"

namespace auggate::stats {

namespace {

// Continued fraction for the incomplete beta, modified Lentz method.
double BetaContinuedFraction(double a, double b, double x) {
  constexpr int kMaxIterations = 10000;
  constexpr double kEpsilon = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEpsilon) return h;
  }
  return h;
}

}  // namespace

double RegularizedIncompleteBeta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw PreconditionError("beta parameters must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw PreconditionError("beta argument must be in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * BetaContinuedFraction(a, b, x) / a;
  return 1.0 - front * BetaContinuedFraction(b, a, 1.0 - x) / b;
}

double StudentTTwoSidedP(double t, double df) {
  if (!(df > 0.0)) throw PreconditionError("degrees of freedom must be positive");
  if (std::isinf(t)) return 0.0;
  const double x = df / (df + t * t);
  return std::clamp(RegularizedIncompleteBeta(df / 2.0, 0.5, x), 0.0, 1.0);
}

nlohmann::json CorrelationReport::ToJson() const {
  return {{"r", r}, {"p_value", p_value}, {"n", n}};
}

CorrelationReport Pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw PreconditionError("pearson inputs differ in length");
  const size_t n = x.size();
  if (n < 3) throw PreconditionError("pearson needs at least three pairs");
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw PreconditionError("undefined correlation: constant sequence");
  }
  CorrelationReport report;
  report.n = n;
  report.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double df = static_cast<double>(n - 2);
  const double one_minus = 1.0 - report.r * report.r;
  if (one_minus <= 0.0) {
    report.p_value = 0.0;
  } else {
    report.p_value = StudentTTwoSidedP(report.r * std::sqrt(df / one_minus), df);
  }
  return report;
}

CorrelationReport PairedScoreFile(const std::filesystem::path& path,
                                  const std::string& first_column,
                                  const std::string& second_column) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  DelimitedReader reader(in, DelimiterForPath(path));
  DelimitedRecord header;
  if (!reader.Next(&header)) throw ParseError(path.string() + ": empty score file");
  int a = -1, b = -1;
  for (size_t i = 0; i < header.fields.size(); ++i) {
    const std::string name = Trim(header.fields[i]);
    if (name == first_column) a = static_cast<int>(i);
    if (name == second_column) b = static_cast<int>(i);
  }
  if (a < 0 || b < 0) {
    throw ParseError(path.string() + ": missing column '" +
                     (a < 0 ? first_column : second_column) + "'");
  }
  std::vector<double> xs, ys;
  DelimitedRecord record;
  int64_t row = 0;
  auto parse = [&](const std::string& field) {
    const std::string s = Trim(field);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
      throw ParseError(path.string() + ": non-numeric score '" + s + "'",
                       ParseError::Location::kRow, row);
    }
    return v;
  };
  while (reader.Next(&record)) {
    ++row;
    if (record.fields.size() <= static_cast<size_t>(std::max(a, b))) {
      throw ParseError(path.string() + ": short row", ParseError::Location::kRow, row);
    }
    xs.push_back(parse(record.fields[a]));
    ys.push_back(parse(record.fields[b]));
  }
  return Pearson(xs, ys);
}

}  // namespace auggate::stats

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


#ifndef AUGGATE_STATS_H_
#define AUGGATE_STATS_H_

#include <filesystem>
#include <span>
#include <string>

#include "json.hpp"

namespace auggate::stats {

// I_x(a, b) for a, b > 0 and x in [0, 1].
double RegularizedIncompleteBeta(double a, double b, double x);

// Two-sided tail probability of Student's t with df degrees of freedom.
double StudentTTwoSidedP(double t, double df);

struct CorrelationReport {
  double r = 0;
  double p_value = 1;
  size_t n = 0;

  nlohmann::json ToJson() const;
};

// Sample Pearson correlation with a two-sided p-value from the t statistic
// on n - 2 degrees of freedom. Throws PreconditionError for unequal
// lengths, fewer than three pairs, or a constant sequence.
CorrelationReport Pearson(std::span<const double> x, std::span<const double> y);

// Correlates two numeric columns of a delimited file with a header row.
CorrelationReport PairedScoreFile(const std::filesystem::path& path,
                                  const std::string& first_column = "human",
                                  const std::string& second_column = "model");

}  // namespace auggate::stats

#endif  // AUGGATE_STATS_H_

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


#ifndef AUGGATE_CLASSIFY_H_
#define AUGGATE_CLASSIFY_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "auggate/corpus.h"
#include "auggate/providers.h"
#include "json.hpp"

namespace auggate::classify {

struct TrainConfig {
  double learning_rate = 0.1;
  // Zero leaves the model at its all-zero initialization.
  int epochs = 1;
  int batch_size = 32;
  uint64_t seed = 102;

  // Throws ConfigError.
  void Validate() const;
};

// Linear softmax classifier. weights is row-major, dimension x classes.
struct ProbeModel {
  size_t dimension = 0;
  std::vector<std::string> labels;
  std::vector<double> weights;
  std::vector<double> bias;

  size_t classes() const { return labels.size(); }
  double weight(size_t d, size_t c) const { return weights[d * labels.size() + c]; }

  static ProbeModel Zero(size_t dimension, std::vector<std::string> labels);
  nlohmann::json ToJson() const;
  static ProbeModel FromJson(const nlohmann::json& j);
  bool operator==(const ProbeModel&) const = default;
};

// Rows of features with class indices into the model's label order.
struct FeatureSet {
  std::vector<std::vector<double>> rows;
  std::vector<int> targets;
};

// Numerically stable; sums to one.
std::vector<double> Softmax(std::span<const double> logits);
std::vector<double> Logits(const ProbeModel& model, std::span<const double> x);

// Mean cross-entropy over the given rows.
double CrossEntropy(const ProbeModel& model, const FeatureSet& data,
                    std::span<const size_t> rows);
double CrossEntropy(const ProbeModel& model, const FeatureSet& data);

// Gradient of the mean cross-entropy over rows, accumulated in row order.
// Outputs are resized to match the model.
void Gradient(const ProbeModel& model, const FeatureSet& data,
              std::span<const size_t> rows, std::vector<double>* grad_weights,
              std::vector<double>* grad_bias);

struct TrainResult {
  ProbeModel model;
  double initial_loss = 0;
  // Full-set loss after each epoch.
  std::vector<double> epoch_losses;
  double final_loss() const {
    return epoch_losses.empty() ? initial_loss : epoch_losses.back();
  }
};

// Mini-batch gradient descent from zero. Each epoch visits the rows in an
// order drawn from the seed. Throws PreconditionError unless at least two
// classes are present.
TrainResult TrainOnFeatures(const FeatureSet& data, size_t dimension,
                            std::vector<std::string> labels, const TrainConfig& config);

// Embeds in batches of batch_size; uniform dimension required.
std::vector<std::vector<double>> EmbedTexts(providers::Embedder& embedder,
                                            std::span<const std::string> texts,
                                            size_t batch_size = 64);

// Label order is the dataset's sorted label set.
TrainResult TrainProbe(const corpus::Dataset& train, providers::Embedder& embedder,
                       const TrainConfig& config);

struct Prediction {
  std::string label;
  std::vector<double> probabilities;
};

// Argmax ties resolve to the earlier label. Throws PreconditionError on a
// dimension mismatch.
Prediction PredictVector(const ProbeModel& model, std::span<const double> x);
std::vector<Prediction> Predict(const ProbeModel& model,
                                std::span<const std::string> texts,
                                providers::Embedder& embedder);

struct ConfusionMatrix {
  std::vector<std::string> labels;
  // counts[true][predicted]
  std::vector<std::vector<int64_t>> counts;

  int64_t total() const;
  nlohmann::json ToJson() const;
};

// Throws PreconditionError on unequal lengths or a label outside the order.
ConfusionMatrix Confusion(std::span<const std::string> predicted,
                          std::span<const std::string> gold,
                          std::vector<std::string> labels);

enum class Averaging { kBinary, kMacro };

// Per-class F1 with 0/0 precision or recall giving 0.
double ClassF1(const ConfusionMatrix& cm, size_t index);
// Binary uses the positive class; macro averages every class. Throws
// PreconditionError on an empty matrix or an unknown positive class.
double F1Score(const ConfusionMatrix& cm, Averaging averaging,
               const std::string& positive = "1");
// trace / total. Throws PreconditionError when total is zero.
double Accuracy(const ConfusionMatrix& cm);

struct Metrics {
  size_t samples = 0;
  double accuracy = 0;
  double f1 = 0;
  Averaging averaging = Averaging::kMacro;
  std::string positive;
  ConfusionMatrix confusion;

  nlohmann::json ToJson() const;
};

// Binary averaging when there are exactly two labels and positive is one of
// them, macro otherwise.
Metrics Evaluate(const ProbeModel& model, const corpus::Dataset& data,
                 providers::Embedder& embedder, const std::string& positive = "1");
Metrics EvaluateFeatures(const ProbeModel& model, const FeatureSet& data,
                         const std::string& positive = "1");

}  // namespace auggate::classify

#endif  // AUGGATE_CLASSIFY_H_

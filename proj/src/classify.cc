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

#include "auggate/classify.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "auggate/error.h"
#include "auggate/util/rng.h"

namespace auggate::classify {

using nlohmann::json;

void TrainConfig::Validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("learning_rate must be positive");
  }
  if (epochs < 0) throw ConfigError("epochs must not be negative");
  if (batch_size < 1) throw ConfigError("batch_size must be positive");
}

ProbeModel ProbeModel::Zero(size_t dimension, std::vector<std::string> labels) {
  ProbeModel m;
  m.dimension = dimension;
  m.weights.assign(dimension * labels.size(), 0.0);
  m.bias.assign(labels.size(), 0.0);
  m.labels = std::move(labels);
  return m;
}

json ProbeModel::ToJson() const {
  return {{"dimension", dimension}, {"labels", labels}, {"weights", weights}, {"bias", bias}};
}

ProbeModel ProbeModel::FromJson(const json& j) {
  ProbeModel m;
  try {
    m.dimension = j.at("dimension").get<size_t>();
    m.labels = j.at("labels").get<std::vector<std::string>>();
    m.weights = j.at("weights").get<std::vector<double>>();
    m.bias = j.at("bias").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed probe model: ") + e.what());
  }
  if (m.weights.size() != m.dimension * m.labels.size() ||
      m.bias.size() != m.labels.size()) {
    throw ParseError("probe model parameter shapes disagree");
  }
  return m;
}

std::vector<double> Softmax(std::span<const double> logits) {
  if (logits.empty()) return {};
  const double top = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double sum = 0.0;
  for (size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - top);
    sum += out[i];
  }
  for (double& p : out) p /= sum;
  return out;
}

std::vector<double> Logits(const ProbeModel& model, std::span<const double> x) {
  if (x.size() != model.dimension) {
    throw PreconditionError("feature dimension " + std::to_string(x.size()) +
                            " does not match model dimension " +
                            std::to_string(model.dimension));
  }
  const size_t c = model.classes();
  std::vector<double> z = model.bias;
  for (size_t d = 0; d < model.dimension; ++d) {
    const double xd = x[d];
    const double* row = &model.weights[d * c];
    for (size_t k = 0; k < c; ++k) z[k] += xd * row[k];
  }
  return z;
}

namespace {

double LogSumExp(std::span<const double> z) {
  const double top = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double v : z) sum += std::exp(v - top);
  return top + std::log(sum);
}

std::vector<size_t> AllRows(const FeatureSet& data) {
  std::vector<size_t> rows(data.rows.size());
  std::iota(rows.begin(), rows.end(), size_t{0});
  return rows;
}

}  // namespace

double CrossEntropy(const ProbeModel& model, const FeatureSet& data,
                    std::span<const size_t> rows) {
  if (rows.empty()) return 0.0;
  double total = 0.0;
  for (size_t r : rows) {
    const std::vector<double> z = Logits(model, data.rows[r]);
    total += LogSumExp(z) - z[data.targets[r]];
  }
  return total / static_cast<double>(rows.size());
}

double CrossEntropy(const ProbeModel& model, const FeatureSet& data) {
  const std::vector<size_t> rows = AllRows(data);
  return CrossEntropy(model, data, rows);
}

void Gradient(const ProbeModel& model, const FeatureSet& data,
              std::span<const size_t> rows, std::vector<double>* grad_weights,
              std::vector<double>* grad_bias) {
  const size_t c = model.classes();
  grad_weights->assign(model.weights.size(), 0.0);
  grad_bias->assign(c, 0.0);
  if (rows.empty()) return;
  for (size_t r : rows) {
    const std::vector<double>& x = data.rows[r];
    std::vector<double> delta = Softmax(Logits(model, x));
    delta[data.targets[r]] -= 1.0;
    for (size_t d = 0; d < model.dimension; ++d) {
      double* row = &(*grad_weights)[d * c];
      for (size_t k = 0; k < c; ++k) row[k] += x[d] * delta[k];
    }
    for (size_t k = 0; k < c; ++k) (*grad_bias)[k] += delta[k];
  }
  const double scale = 1.0 / static_cast<double>(rows.size());
  for (double& g : *grad_weights) g *= scale;
  for (double& g : *grad_bias) g *= scale;
}

TrainResult TrainOnFeatures(const FeatureSet& data, size_t dimension,
                            std::vector<std::string> labels, const TrainConfig& config) {
  config.Validate();
  if (data.rows.size() != data.targets.size()) {
    throw PreconditionError("feature rows and targets differ in length");
  }
  std::vector<bool> present(labels.size(), false);
  for (int t : data.targets) {
    if (t < 0 || static_cast<size_t>(t) >= labels.size()) {
      throw PreconditionError("target index outside label order");
    }
    present[t] = true;
  }
  if (std::count(present.begin(), present.end(), true) < 2) {
    throw PreconditionError("training data must contain at least two classes");
  }
  for (const auto& row : data.rows) {
    if (row.size() != dimension) throw PreconditionError("feature rows of mixed dimension");
  }

  TrainResult result;
  result.model = ProbeModel::Zero(dimension, std::move(labels));
  result.initial_loss = CrossEntropy(result.model, data);
  std::vector<size_t> order = AllRows(data);
  std::vector<double> gw, gb;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    Rng rng = Rng::Substream(config.seed, {static_cast<uint64_t>(epoch)});
    std::iota(order.begin(), order.end(), size_t{0});
    rng.Shuffle(order);
    for (size_t start = 0; start < order.size(); start += config.batch_size) {
      const size_t end = std::min(order.size(), start + static_cast<size_t>(config.batch_size));
      Gradient(result.model, data, std::span(order.data() + start, end - start), &gw, &gb);
      for (size_t i = 0; i < gw.size(); ++i) result.model.weights[i] -= config.learning_rate * gw[i];
      for (size_t i = 0; i < gb.size(); ++i) result.model.bias[i] -= config.learning_rate * gb[i];
    }
    result.epoch_losses.push_back(CrossEntropy(result.model, data));
  }
  return result;
}

std::vector<std::vector<double>> EmbedTexts(providers::Embedder& embedder,
                                            std::span<const std::string> texts,
                                            size_t batch_size) {
  std::vector<std::vector<double>> out;
  out.reserve(texts.size());
  for (size_t start = 0; start < texts.size(); start += batch_size) {
    const size_t end = std::min(texts.size(), start + batch_size);
    for (const EmbeddingVector& v : providers::Embed(embedder, texts.subspan(start, end - start))) {
      out.emplace_back(v.values().begin(), v.values().end());
    }
  }
  for (const auto& row : out) {
    if (row.size() != out.front().size()) {
      throw ProviderError(ProviderError::Kind::kProtocol,
                          "embedder returned vectors of mixed dimension");
    }
  }
  return out;
}

namespace {

FeatureSet Featurize(const corpus::Dataset& data, providers::Embedder& embedder,
                     const std::vector<std::string>& labels) {
  std::vector<std::string> texts;
  FeatureSet features;
  for (const corpus::LabeledSentence& r : data.records()) {
    texts.push_back(r.text);
    auto it = std::find(labels.begin(), labels.end(), r.label);
    if (it == labels.end()) {
      throw PreconditionError("label '" + r.label + "' is not in the model's label order");
    }
    features.targets.push_back(static_cast<int>(it - labels.begin()));
  }
  features.rows = EmbedTexts(embedder, texts);
  return features;
}

}  // namespace

TrainResult TrainProbe(const corpus::Dataset& train, providers::Embedder& embedder,
                       const TrainConfig& config) {
  config.Validate();
  std::vector<std::string> labels = train.LabelOrder();
  if (train.size() == 0) throw PreconditionError("training set is empty");
  FeatureSet features = Featurize(train, embedder, labels);
  const size_t dim = features.rows.front().size();
  return TrainOnFeatures(features, dim, std::move(labels), config);
}

Prediction PredictVector(const ProbeModel& model, std::span<const double> x) {
  Prediction p;
  p.probabilities = Softmax(Logits(model, x));
  size_t best = 0;
  for (size_t k = 1; k < p.probabilities.size(); ++k) {
    if (p.probabilities[k] > p.probabilities[best]) best = k;
  }
  p.label = model.labels[best];
  return p;
}

std::vector<Prediction> Predict(const ProbeModel& model, std::span<const std::string> texts,
                                providers::Embedder& embedder) {
  std::vector<Prediction> out;
  if (texts.empty()) return out;
  for (const auto& row : EmbedTexts(embedder, texts)) out.push_back(PredictVector(model, row));
  return out;
}

int64_t ConfusionMatrix::total() const {
  int64_t t = 0;
  for (const auto& row : counts) {
    for (int64_t v : row) t += v;
  }
  return t;
}

json ConfusionMatrix::ToJson() const { return {{"labels", labels}, {"counts", counts}}; }

ConfusionMatrix Confusion(std::span<const std::string> predicted,
                          std::span<const std::string> gold,
                          std::vector<std::string> labels) {
  if (predicted.size() != gold.size()) {
    throw PreconditionError("predictions and gold labels differ in length");
  }
  ConfusionMatrix cm;
  cm.counts.assign(labels.size(), std::vector<int64_t>(labels.size(), 0));
  auto index = [&](const std::string& label) {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw PreconditionError("label '" + label + "' outside label order");
    return static_cast<size_t>(it - labels.begin());
  };
  for (size_t i = 0; i < gold.size(); ++i) ++cm.counts[index(gold[i])][index(predicted[i])];
  cm.labels = std::move(labels);
  return cm;
}

double ClassF1(const ConfusionMatrix& cm, size_t index) {
  const int64_t tp = cm.counts[index][index];
  int64_t fp = 0, fn = 0;
  for (size_t j = 0; j < cm.labels.size(); ++j) {
    if (j == index) continue;
    fp += cm.counts[j][index];
    fn += cm.counts[index][j];
  }
  if (tp + fp == 0 || tp + fn == 0) return 0.0;
  const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  const double recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

double F1Score(const ConfusionMatrix& cm, Averaging averaging, const std::string& positive) {
  if (cm.labels.empty()) throw PreconditionError("empty confusion matrix");
  if (averaging == Averaging::kBinary) {
    auto it = std::find(cm.labels.begin(), cm.labels.end(), positive);
    if (it == cm.labels.end()) {
      throw PreconditionError("unknown positive class '" + positive + "'");
    }
    return ClassF1(cm, static_cast<size_t>(it - cm.labels.begin()));
  }
  double sum = 0.0;
  for (size_t i = 0; i < cm.labels.size(); ++i) sum += ClassF1(cm, i);
  return sum / static_cast<double>(cm.labels.size());
}

double Accuracy(const ConfusionMatrix& cm) {
  const int64_t total = cm.total();
  if (total == 0) throw PreconditionError("accuracy of an empty confusion matrix");
  int64_t trace = 0;
  for (size_t i = 0; i < cm.labels.size(); ++i) trace += cm.counts[i][i];
  return static_cast<double>(trace) / static_cast<double>(total);
}

json Metrics::ToJson() const {
  return {{"samples", samples},
          {"accuracy", accuracy},
          {"f1", f1},
          {"averaging", averaging == Averaging::kBinary ? "binary" : "macro"},
          {"positive", averaging == Averaging::kBinary ? json(positive) : json(nullptr)},
          {"confusion", confusion.ToJson()}};
}

namespace {

Metrics Summarize(ConfusionMatrix cm, const std::string& positive) {
  Metrics m;
  const bool binary = cm.labels.size() == 2 &&
                      std::find(cm.labels.begin(), cm.labels.end(), positive) != cm.labels.end();
  m.averaging = binary ? Averaging::kBinary : Averaging::kMacro;
  m.positive = binary ? positive : "";
  m.samples = static_cast<size_t>(cm.total());
  m.accuracy = Accuracy(cm);
  m.f1 = F1Score(cm, m.averaging, positive);
  m.confusion = std::move(cm);
  return m;
}

}  // namespace

Metrics EvaluateFeatures(const ProbeModel& model, const FeatureSet& data,
                         const std::string& positive) {
  std::vector<std::string> predicted, gold;
  for (size_t i = 0; i < data.rows.size(); ++i) {
    predicted.push_back(PredictVector(model, data.rows[i]).label);
    gold.push_back(model.labels.at(data.targets[i]));
  }
  return Summarize(Confusion(predicted, gold, model.labels), positive);
}

Metrics Evaluate(const ProbeModel& model, const corpus::Dataset& data,
                 providers::Embedder& embedder, const std::string& positive) {
  if (data.size() == 0) throw PreconditionError("evaluation set is empty");
  std::vector<std::string> texts, gold;
  for (const corpus::LabeledSentence& r : data.records()) {
    texts.push_back(r.text);
    gold.push_back(r.label);
  }
  std::vector<std::string> predicted;
  for (const Prediction& p : Predict(model, texts, embedder)) predicted.push_back(p.label);
  return Summarize(Confusion(predicted, gold, model.labels), positive);
}

}  // namespace auggate::classify

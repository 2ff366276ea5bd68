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

#include "auggate/cli/run_config.h"

#include <cstdlib>
#include <regex>

#include "auggate/error.h"
#include "auggate/util/file_util.h"

namespace auggate::cli {

using nlohmann::json;

namespace {

// Reads typed fields from one JSON object and rejects keys it never asked
// about.
class ObjectReader {
 public:
  ObjectReader(const json& object, std::string where) : object_(object), where_(std::move(where)) {
    if (!object_.is_object()) throw ConfigError(where_ + " must be an object");
  }

  bool Has(const std::string& key) {
    seen_.insert(key);
    return object_.contains(key) && !object_[key].is_null();
  }

  template <typename T>
  void Get(const std::string& key, T* out) {
    if (!Has(key)) return;
    try {
      *out = object_[key].get<T>();
    } catch (const json::exception&) {
      throw ConfigError(where_ + "." + key + " has the wrong type");
    }
  }

  template <typename T>
  void GetOptional(const std::string& key, std::optional<T>* out) {
    if (!Has(key)) return;
    T value;
    Get(key, &value);
    *out = value;
  }

  const json& Sub(const std::string& key) {
    seen_.insert(key);
    return object_[key];
  }

  void Finish() const {
    for (const auto& [key, value] : object_.items()) {
      if (!seen_.contains(key)) throw ConfigError("unknown key " + where_ + "." + key);
    }
  }

 private:
  const json& object_;
  std::string where_;
  std::set<std::string> seen_;
};

lexicon::PartOfSpeech ParsePos(const std::string& name) {
  for (auto pos : {lexicon::PartOfSpeech::kNoun, lexicon::PartOfSpeech::kVerb,
                   lexicon::PartOfSpeech::kAdj, lexicon::PartOfSpeech::kAdv,
                   lexicon::PartOfSpeech::kAny}) {
    if (lexicon::PartOfSpeechName(pos) == name) return pos;
  }
  throw ConfigError("unknown part of speech '" + name + "'");
}

providers::ChatPromptSpec ParsePrompt(const json& j) {
  providers::ChatPromptSpec spec = providers::ChatPromptSpec::Default();
  ObjectReader r(j, "prompt");
  r.Get("prompt_id", &spec.prompt_id);
  r.Get("system_text", &spec.system_text);
  r.Get("user_prefix", &spec.user_prefix);
  r.Get("model", &spec.model_id);
  r.Get("temperature", &spec.temperature);
  r.Get("max_tokens", &spec.max_tokens);
  r.Get("n_variants", &spec.n_variants);
  r.Get("known_labels", &spec.known_labels);
  r.Finish();
  spec.Validate();
  return spec;
}

json PromptJson(const providers::ChatPromptSpec& spec) {
  return {{"prompt_id", spec.prompt_id},     {"system_text", spec.system_text},
          {"user_prefix", spec.user_prefix}, {"model", spec.model_id},
          {"temperature", spec.temperature}, {"max_tokens", spec.max_tokens},
          {"n_variants", spec.n_variants},   {"known_labels", spec.known_labels}};
}

StrategySpec ParseStrategy(const json& j, size_t index) {
  StrategySpec s;
  const std::string where = "strategies[" + std::to_string(index) + "]";
  if (j.is_string()) {
    s.config.method = augment::ParseMethod(j.get<std::string>());
    s.name = std::string(augment::MethodName(s.config.method));
    return s;
  }
  ObjectReader r(j, where);
  std::string method;
  r.Get("method", &method);
  if (method.empty()) throw ConfigError(where + " needs a method");
  s.config.method = augment::ParseMethod(method);
  s.name = method;
  r.Get("name", &s.name);
  r.Get("use_stopwords", &s.use_stopwords);
  augment::StrategyConfig& c = s.config;
  r.Get("languages", &c.languages);
  r.Get("max_chain_len", &c.max_chain_len);
  r.Get("k", &c.embedding.k);
  r.Get("target_count", &c.embedding.target_count);
  r.Get("max_targets", &c.embedding.max_targets);
  r.Get("iterations", &c.mlm.iterations);
  r.Get("mask_ratio", &c.mlm.mask_ratio);
  r.Get("top_k", &c.mlm.top_k);
  std::string pos(lexicon::PartOfSpeechName(c.wordnet.pos));
  r.Get("pos", &pos);
  c.wordnet.pos = ParsePos(pos);
  r.Get("include_multiword", &c.wordnet.include_multiword);
  if (r.Has("prompt")) c.prompt = ParsePrompt(r.Sub("prompt"));
  r.Finish();
  if (s.name.empty() || s.name.find('/') != std::string::npos || s.name[0] == '.') {
    throw ConfigError(where + ".name must be a plain file stem");
  }
  return s;
}

json StrategyJson(const StrategySpec& s) {
  const augment::StrategyConfig& c = s.config;
  json j = {{"method", augment::MethodName(c.method)},
            {"name", s.name},
            {"use_stopwords", s.use_stopwords}};
  switch (c.method) {
    case augment::Method::kWordNet:
      j["pos"] = lexicon::PartOfSpeechName(c.wordnet.pos);
      j["include_multiword"] = c.wordnet.include_multiword;
      break;
    case augment::Method::kEmbedding:
      j["k"] = c.embedding.k;
      j["target_count"] = c.embedding.target_count;
      j["max_targets"] = c.embedding.max_targets;
      break;
    case augment::Method::kBackTranslation:
      j["languages"] = c.languages;
      j["max_chain_len"] = c.max_chain_len;
      break;
    case augment::Method::kMlm:
      j["iterations"] = c.mlm.iterations;
      j["mask_ratio"] = c.mlm.mask_ratio;
      j["top_k"] = c.mlm.top_k;
      break;
    case augment::Method::kLlm:
      j["prompt"] = PromptJson(c.prompt);
      break;
  }
  return j;
}

ProviderSpec ParseProvider(const json& j, const std::string& kind) {
  ProviderSpec p;
  const std::string where = "providers." + kind;
  if (j.is_string()) {
    p.stub = j.get<std::string>();
    return p;
  }
  ObjectReader r(j, where);
  for (const char* secret : {"token", "auth_token", "api_key", "authorization"}) {
    if (r.Has(secret)) {
      throw ConfigError(where + "." + secret +
                        ": tokens are read from the environment (see token_env), never "
                        "from the config file");
    }
  }
  r.Get("stub", &p.stub);
  r.Get("fixture", &p.fixture);
  r.Get("dimension", &p.dimension);
  r.Get("url", &p.url);
  r.Get("path", &p.path);
  r.Get("token_env", &p.token_env);
  r.Get("timeout_ms", &p.timeout_ms);
  r.Get("max_in_flight", &p.max_in_flight);
  r.Get("mask_token", &p.mask_token);
  r.Get("languages", &p.languages);
  r.Finish();
  if (!p.stub.empty() && !p.url.empty()) {
    throw ConfigError(where + " sets both a stub and a url; choose one");
  }
  if (p.timeout_ms <= 0 || p.max_in_flight <= 0) {
    throw ConfigError(where + " timeout_ms and max_in_flight must be positive");
  }
  return p;
}

const std::set<std::string> kProviderKinds = {"embed", "translate", "fill_mask", "chat"};

}  // namespace

json ProviderSpec::ToJson() const {
  json j = json::object();
  if (!stub.empty()) {
    j["stub"] = stub;
    if (!fixture.empty()) j["fixture"] = fixture;
    if (dimension > 0) j["dimension"] = dimension;
    if (!languages.empty()) j["languages"] = languages;
    return j;
  }
  j["url"] = url;
  if (!path.empty()) j["path"] = path;
  j["token_env"] = token_env;
  j["timeout_ms"] = timeout_ms;
  j["max_in_flight"] = max_in_flight;
  j["mask_token"] = mask_token;
  if (!languages.empty()) j["languages"] = languages;
  return j;
}

std::filesystem::path RunConfig::Resolve(const std::string& path) const {
  std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return p;
  return base_dir / p;
}

uint64_t RunConfig::RequireSeed() const {
  if (!seed) throw ConfigError("no seed configured; set \"seed\" or pass --seed");
  return *seed;
}

json RunConfig::ToJson() const {
  json strategies_json = json::array();
  for (const StrategySpec& s : strategies) strategies_json.push_back(StrategyJson(s));
  json providers_json = json::object();
  for (const auto& [kind, p] : providers) {
    if (p.configured()) providers_json[kind] = p.ToJson();
  }
  json labels = dataset.load.declared_labels;
  return {
      {"seed", seed ? json(*seed) : json(nullptr)},
      {"output_dir", output_dir},
      {"workers", workers},
      {"failure_tolerance", failure_tolerance},
      {"dataset",
       {{"path", dataset.path},
        {"format", dataset.format},
        {"name", dataset.load.name},
        {"id_field", dataset.load.schema.id_field},
        {"text_field", dataset.load.schema.text_field},
        {"label_field", dataset.load.schema.label_field},
        {"strict", dataset.load.strict},
        {"labels", labels}}},
      {"preprocess", {{"preset", preset}, {"data_dir", data_dir}}},
      {"split",
       {{"train", split.train},
        {"validation", split.validation},
        {"test", split.test},
        {"seed", split_seed}}},
      {"strategies", strategies_json},
      {"gate",
       {{"threshold", gate.threshold},
        {"pooling", gate::PoolingName(gate.pooling)},
        {"inclusive", gate.inclusive},
        {"batch_size", gate.batch_size},
        {"sweep", sweep}}},
      {"providers", providers_json},
      {"resources",
       {{"wordnet_dir", wordnet_dir},
        {"vectors", vectors},
        {"vectors_limit", vectors_limit ? json(*vectors_limit) : json(nullptr)}}},
      {"audit",
       {{"n", audit.n},
        {"mode", audit.mode == eval::SampleMode::kFirst ? "first" : "random"},
        {"seed", audit.seed},
        {"blind", audit.blind}}},
      {"probe",
       {{"learning_rate", probe.learning_rate},
        {"epochs", probe.epochs},
        {"batch_size", probe.batch_size},
        {"seed", probe.seed},
        {"positive_label", positive_label},
        {"overfit_levels", overfit_levels}}},
      {"evaluate", {{"coverage_dimension", coverage_dimension}, {"paired_scores", paired_scores}}},
  };
}

json InterpolateEnv(const json& value) {
  if (value.is_string()) {
    static const std::regex kVar(R"(\$\{([A-Za-z_][A-Za-z0-9_]*)\})");
    const std::string s = value.get<std::string>();
    std::string out;
    auto begin = std::sregex_iterator(s.begin(), s.end(), kVar);
    size_t last = 0;
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
      const std::smatch& m = *it;
      out.append(s, last, m.position(0) - last);
      const std::string name = m[1].str();
      const char* env = std::getenv(name.c_str());
      if (env == nullptr) throw ConfigError("environment variable " + name + " is not set");
      out += env;
      last = m.position(0) + m.length(0);
    }
    out.append(s, last);
    return out;
  }
  if (value.is_object()) {
    json out = json::object();
    for (const auto& [k, v] : value.items()) out[k] = InterpolateEnv(v);
    return out;
  }
  if (value.is_array()) {
    json out = json::array();
    for (const auto& v : value) out.push_back(InterpolateEnv(v));
    return out;
  }
  return value;
}

RunConfig ParseRunConfig(const json& raw, const std::filesystem::path& base_dir) {
  const json j = InterpolateEnv(raw);
  RunConfig c;
  c.base_dir = base_dir;
  ObjectReader r(j, "config");
  c.seed = std::nullopt;
  r.GetOptional("seed", &c.seed);
  r.Get("output_dir", &c.output_dir);
  r.Get("workers", &c.workers);
  r.Get("failure_tolerance", &c.failure_tolerance);
  if (c.workers < 1) throw ConfigError("workers must be at least 1");
  if (!(c.failure_tolerance >= 0.0 && c.failure_tolerance <= 1.0)) {
    throw ConfigError("failure_tolerance must be in [0, 1]");
  }

  if (!r.Has("dataset")) throw ConfigError("config needs a dataset section");
  {
    ObjectReader d(r.Sub("dataset"), "dataset");
    d.Get("path", &c.dataset.path);
    d.Get("format", &c.dataset.format);
    d.Get("name", &c.dataset.load.name);
    d.Get("id_field", &c.dataset.load.schema.id_field);
    d.Get("text_field", &c.dataset.load.schema.text_field);
    d.Get("label_field", &c.dataset.load.schema.label_field);
    d.Get("strict", &c.dataset.load.strict);
    d.Get("labels", &c.dataset.load.declared_labels);
    d.Finish();
    if (c.dataset.path.empty()) throw ConfigError("dataset.path is required");
    if (!c.dataset.format.empty()) corpus::ParseFileFormat(c.dataset.format);
  }
  if (r.Has("preprocess")) {
    const json& p = r.Sub("preprocess");
    if (p.is_string()) {
      c.preset = p.get<std::string>();
    } else {
      ObjectReader pr(p, "preprocess");
      pr.Get("preset", &c.preset);
      pr.Get("data_dir", &c.data_dir);
      pr.Finish();
    }
    if (c.preset != "none" && c.preset != "review" && c.preset != "hate") {
      throw ConfigError("unknown preprocessing preset '" + c.preset + "'");
    }
  }
  if (r.Has("split")) {
    ObjectReader s(r.Sub("split"), "split");
    s.Get("train", &c.split.train);
    s.Get("validation", &c.split.validation);
    s.Get("test", &c.split.test);
    s.Get("seed", &c.split_seed);
    s.Finish();
  }
  if (r.Has("strategies")) {
    const json& list = r.Sub("strategies");
    if (!list.is_array()) throw ConfigError("strategies must be a list");
    std::set<std::string> names;
    for (size_t i = 0; i < list.size(); ++i) {
      c.strategies.push_back(ParseStrategy(list[i], i));
      if (!names.insert(c.strategies.back().name).second) {
        throw ConfigError("duplicate strategy name '" + c.strategies.back().name + "'");
      }
    }
  }
  if (r.Has("gate")) {
    ObjectReader g(r.Sub("gate"), "gate");
    g.Get("threshold", &c.gate.threshold);
    std::string pooling(gate::PoolingName(c.gate.pooling));
    g.Get("pooling", &pooling);
    c.gate.pooling = gate::ParsePooling(pooling);
    g.Get("inclusive", &c.gate.inclusive);
    g.Get("batch_size", &c.gate.batch_size);
    g.Get("sweep", &c.sweep);
    g.Finish();
  }
  c.gate.Validate();
  if (c.sweep.empty() || !std::is_sorted(c.sweep.begin(), c.sweep.end())) {
    throw ConfigError("gate.sweep must be a non-empty ascending list");
  }
  if (r.Has("providers")) {
    const json& p = r.Sub("providers");
    if (!p.is_object()) throw ConfigError("providers must be an object");
    for (const auto& [kind, spec] : p.items()) {
      if (!kProviderKinds.contains(kind)) {
        throw ConfigError("unknown provider kind '" + kind +
                          "' (valid: embed, translate, fill_mask, chat)");
      }
      c.providers[kind] = ParseProvider(spec, kind);
    }
  }
  if (r.Has("resources")) {
    ObjectReader res(r.Sub("resources"), "resources");
    res.Get("wordnet_dir", &c.wordnet_dir);
    res.Get("vectors", &c.vectors);
    res.GetOptional("vectors_limit", &c.vectors_limit);
    res.Finish();
  }
  if (r.Has("audit")) {
    ObjectReader a(r.Sub("audit"), "audit");
    a.Get("n", &c.audit.n);
    std::string mode = "first";
    a.Get("mode", &mode);
    if (mode == "first") {
      c.audit.mode = eval::SampleMode::kFirst;
    } else if (mode == "random") {
      c.audit.mode = eval::SampleMode::kRandom;
    } else {
      throw ConfigError("audit.mode must be first or random");
    }
    a.Get("seed", &c.audit.seed);
    a.Get("blind", &c.audit.blind);
    a.Finish();
    if (c.audit.n == 0) throw ConfigError("audit.n must be at least 1");
  }
  if (r.Has("probe")) {
    ObjectReader p(r.Sub("probe"), "probe");
    p.Get("learning_rate", &c.probe.learning_rate);
    p.Get("epochs", &c.probe.epochs);
    p.Get("batch_size", &c.probe.batch_size);
    p.Get("seed", &c.probe.seed);
    p.Get("positive_label", &c.positive_label);
    p.Get("overfit_levels", &c.overfit_levels);
    p.Finish();
  }
  c.probe.Validate();
  for (int level : c.overfit_levels) {
    if (level < 0) throw ConfigError("probe.overfit_levels must not be negative");
  }
  if (r.Has("evaluate")) {
    ObjectReader e(r.Sub("evaluate"), "evaluate");
    e.Get("coverage_dimension", &c.coverage_dimension);
    e.Get("paired_scores", &c.paired_scores);
    e.Finish();
    if (c.coverage_dimension != 2 && c.coverage_dimension != 3) {
      throw ConfigError("evaluate.coverage_dimension must be 2 or 3");
    }
  }
  r.Finish();
  return c;
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  std::string text;
  try {
    text = ReadFileToString(path);
  } catch (const IoError& e) {
    throw ConfigError(std::string("cannot read config: ") + e.what());
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return ParseRunConfig(j, path.parent_path());
}

void ApplyOverrides(RunConfig* config, const Overrides& o) {
  if (o.seed) config->seed = *o.seed;
  if (o.output_dir) {
    // Flag paths are relative to the working directory, not the config.
    config->output_dir = std::filesystem::absolute(*o.output_dir).string();
  }
  if (o.threshold) {
    config->gate.threshold = *o.threshold;
    config->gate.Validate();
  }
  if (o.split_seed) config->split_seed = *o.split_seed;
  if (o.strategies) {
    std::vector<StrategySpec> chosen;
    for (const std::string& name : *o.strategies) {
      auto it = std::find_if(config->strategies.begin(), config->strategies.end(),
                             [&](const StrategySpec& s) { return s.name == name; });
      if (it != config->strategies.end()) {
        chosen.push_back(*it);
        continue;
      }
      StrategySpec s;
      s.config.method = augment::ParseMethod(name);
      s.name = name;
      chosen.push_back(s);
    }
    config->strategies = std::move(chosen);
  }
  if (o.stub_providers) {
    static const std::map<std::string, std::string> kDefaults = {
        {"embed", "trigram"}, {"translate", "pseudo"}, {"fill_mask", "vocab"}, {"chat", "template"}};
    for (const auto& [kind, stub] : kDefaults) {
      ProviderSpec& p = config->providers[kind];
      if (p.stub.empty()) {
        ProviderSpec fresh;
        fresh.stub = stub;
        fresh.languages = p.languages;
        p = fresh;
      }
    }
  }
}

std::string ConfigHash(const RunConfig& config) {
  json j = config.ToJson();
  j.erase("output_dir");
  return Sha256Hex(j.dump());
}

}  // namespace auggate::cli

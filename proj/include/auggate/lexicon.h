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
#ifndef AUGGATE_LEXICON_H_
#define AUGGATE_LEXICON_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace auggate::lexicon {

enum class PartOfSpeech { kNoun, kVerb, kAdj, kAdv, kAny };

std::string_view PartOfSpeechName(PartOfSpeech pos);

struct SynonymSet {
  std::string headword;
  // Deduplicated, first-seen order, headword excluded. Multi-word lemmas use
  // spaces ("ice cream").
  std::vector<std::string> synonyms;
  PartOfSpeech part_of_speech = PartOfSpeech::kAny;
};

// Synonym lookup over WordNet 3.x database files (index.* / data.*).
class Thesaurus {
 public:
  // POS is taken from each file's extension (.noun, .verb, .adj, .adv).
  // Throws IoError for missing files and ParseError (with byte offset) for
  // malformed lines.
  static Thesaurus LoadWordNet(std::span<const std::filesystem::path> index_paths,
                               std::span<const std::filesystem::path> data_paths);
  // Loads whichever of index.{noun,verb,adj,adv} and data.* exist in dir.
  static Thesaurus LoadWordNetDir(const std::filesystem::path& dir);

  // kAny unions the synsets of every part of speech (noun, verb, adj, adv
  // order). Unknown words yield an empty synonym list.
  SynonymSet Lookup(std::string_view word, PartOfSpeech pos,
                    bool include_multiword = false) const;

  size_t synset_count() const { return synsets_.size(); }
  size_t lemma_count() const { return index_.size(); }
  // Raw member lemmas of one synset, as stored (underscores kept).
  const std::vector<std::string>* Synset(PartOfSpeech pos,
                                         uint64_t offset) const;

 private:
  using Key = std::pair<PartOfSpeech, uint64_t>;
  std::map<Key, std::vector<std::string>> synsets_;
  std::map<std::pair<std::string, PartOfSpeech>, std::vector<uint64_t>> index_;
};

// Word-vector table loaded from a textual .vec file.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  // data is row-major, words.size() * dimension floats.
  EmbeddingTable(int dimension, std::vector<std::string> words,
                 std::vector<float> data, std::string source = {});

  int dimension() const { return dimension_; }
  size_t size() const { return words_.size(); }
  const std::string& source() const { return source_; }
  const std::string& word(size_t i) const { return words_[i]; }
  std::span<const float> vector(size_t i) const {
    return {data_.data() + i * static_cast<size_t>(dimension_),
            static_cast<size_t>(dimension_)};
  }
  double norm(size_t i) const { return norms_[i]; }

  // Case-insensitive lookup: the lowercased word first, then the word as
  // given, then any vocabulary entry that matches after case folding.
  std::optional<size_t> Find(std::string_view word) const;

 private:
  int dimension_ = 0;
  std::vector<std::string> words_;
  std::vector<float> data_;
  std::vector<double> norms_;
  std::string source_;
  std::unordered_map<std::string, size_t> exact_;
  std::unordered_map<std::string, size_t> folded_;
};

struct VecLoadOptions {
  // Stop after this many vectors.
  std::optional<size_t> limit;
  // Header/row-count disagreement is an error instead of a warning.
  bool strict = true;
};

// Reads "count dim" (optional) then "word v1 ... vd" lines. Throws
// ParseError naming the line for wrong arity, non-numeric components or
// duplicate words, and for an empty file.
EmbeddingTable LoadVecTable(const std::filesystem::path& path,
                            const VecLoadOptions& options = {},
                            std::vector<std::string>* warnings = nullptr);
void WriteVecTable(const EmbeddingTable& table,
                   const std::filesystem::path& path);

struct Neighbor {
  std::string word;
  double score = 0.0;
};

struct NeighborList {
  std::string query;
  // Descending score; ties in lexicographic word order.
  std::vector<Neighbor> neighbors;
};

// Exhaustive cosine scan. Returns min(k, size()-1) entries, never the query
// itself. Throws PreconditionError for an unknown word, k < 1, or a zero
// query vector.
NeighborList NearestNeighbors(const EmbeddingTable& table,
                              std::string_view word, int k);

}  // namespace auggate::lexicon

#endif  // AUGGATE_LEXICON_H_

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
#ifndef AUGGATE_UTIL_RNG_H_
#define AUGGATE_UTIL_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace auggate {

// SplitMix64 finalizer.
uint64_t Mix64(uint64_t x);

// 64-bit FNV-1a.
uint64_t Fnv1a64(std::string_view bytes);

// Small deterministic generator (SplitMix64). Every draw is defined purely in
// integer arithmetic, so streams are bit-identical across platforms, unlike
// the std:: distributions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  // Derives an independent stream from a seed and a list of tags, e.g.
  // (seed, record hash, iteration).
  static Rng Substream(uint64_t seed, std::initializer_list<uint64_t> tags);

  uint64_t Next();
  // Uniform integer in [0, bound). bound must be positive.
  uint64_t Below(uint64_t bound);
  // Uniform double in [0, 1) with 53 random bits.
  double Uniform01();

  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (size_t i = items.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(Below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  // k distinct values from [0, n) in draw order (partial Fisher-Yates).
  std::vector<int> SampleWithoutReplacement(int n, int k);

 private:
  uint64_t state_;
};

}  // namespace auggate

#endif  // AUGGATE_UTIL_RNG_H_

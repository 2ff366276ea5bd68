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
#ifndef AUGGATE_EMBEDDING_VECTOR_H_
#define AUGGATE_EMBEDDING_VECTOR_H_

#include <cstddef>
#include <span>
#include <vector>

namespace auggate {

// Fixed-dimension real vector with finite components. Construction throws
// PreconditionError on an empty or non-finite input.
class EmbeddingVector {
 public:
  explicit EmbeddingVector(std::vector<double> values);

  size_t dimension() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](size_t i) const { return values_[i]; }
  double Norm() const;

  bool operator==(const EmbeddingVector&) const = default;

 private:
  std::vector<double> values_;
};

}  // namespace auggate

#endif  // AUGGATE_EMBEDDING_VECTOR_H_

// Copyright 2026 The Entroflow Authors
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

#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace entroflow {

/// Tensor factorization d_1 x ... x d_k of a state space. Composite index
/// n = sum_i n_i * prod_{j>i} d_j, so the first factor is most significant
/// (the ordering Kronecker products produce).
class Partition {
 public:
  /// Throws ConfigInvalid on an empty list or a zero dimension.
  explicit Partition(std::vector<std::size_t> dims);
  Partition(std::initializer_list<std::size_t> dims)
      : Partition(std::vector<std::size_t>(dims)) {}

  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t factors() const noexcept { return dims_.size(); }
  std::size_t dim(std::size_t factor) const { return dims_.at(factor); }
  std::size_t total_dim() const noexcept { return total_; }

  /// Per-factor digits of a composite index.
  std::vector<std::size_t> split(std::size_t index) const;
  std::size_t join(const std::vector<std::size_t>& digits) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_ = 1;
};

}  // namespace entroflow

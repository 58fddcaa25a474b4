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

#include "entroflow/partition.hpp"

#include <string>

#include "entroflow/errors.hpp"

namespace entroflow {

Partition::Partition(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw Error(ErrorCode::ConfigInvalid, "partition needs at least one factor");
  for (std::size_t d : dims_) {
    if (d == 0) throw Error(ErrorCode::ConfigInvalid, "partition factor dimension must be positive");
    total_ *= d;
  }
}

std::vector<std::size_t> Partition::split(std::size_t index) const {
  std::vector<std::size_t> digits(dims_.size());
  for (std::size_t i = dims_.size(); i-- > 0;) {
    digits[i] = index % dims_[i];
    index /= dims_[i];
  }
  return digits;
}

std::size_t Partition::join(const std::vector<std::size_t>& digits) const {
  if (digits.size() != dims_.size()) {
    throw Error(ErrorCode::DimMismatch, "expected " + std::to_string(dims_.size()) + " digits");
  }
  std::size_t index = 0;
  for (std::size_t i = 0; i < dims_.size(); ++i) index = index * dims_[i] + digits[i];
  return index;
}

}  // namespace entroflow

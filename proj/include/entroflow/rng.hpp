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

#include <complex>
#include <cstdint>
#include <random>

namespace entroflow {

/// Seedable random stream with a fully specified output sequence.
///
/// The engine is std::mt19937_64, whose sequence is fixed by the standard.
/// Distributions are implemented here rather than taken from <random> because
/// the standard distributions are implementation-defined:
///   uniform()     = (next() >> 11) * 2^-53, in [0, 1)
///   index(n)      = rejection sampling on next(), unbiased in [0, n)
///   normal()      = Marsaglia polar method, pairs consumed in order
///
/// A stream is single-owner. Concurrent tasks take one stream each, obtained
/// with derive(master_seed, i).
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  /// Stream i of a master seed: seed_i = splitmix64(master ^ splitmix64(i)).
  static RngStream derive(std::uint64_t master_seed, std::uint64_t index);
  static std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next();
  double uniform();
  std::uint64_t index(std::uint64_t n);
  double normal();
  /// Real and imaginary parts independent N(0, 1).
  std::complex<double> complex_normal();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace entroflow

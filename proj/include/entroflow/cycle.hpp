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
#include <cstdint>
#include <optional>
#include <vector>

#include "entroflow/density.hpp"
#include "entroflow/inequalities.hpp"
#include "entroflow/partition.hpp"
#include "entroflow/tolerance.hpp"

namespace entroflow {

inline constexpr std::size_t kDefaultMaxDim = 64;

struct InitialState {
  enum class Kind { RandomProduct, Given };

  Kind kind = Kind::RandomProduct;
  std::uint64_t seed = 0;
  /// Rank of each random factor, capped at the factor dimension. 1 = pure.
  std::size_t rank = 1;
  /// Used when kind == Given.
  std::optional<DensityOperator> state;
};

struct CycleConfig {
  Partition partition{2, 2};
  std::size_t n_cycles = 20;
  std::uint64_t hamiltonian_seed = 0;
  double coupling_strength = 1.0;
  double evolution_time = 1.0;
  InitialState initial;
  double k_b = 1.0;
  ToleranceSet tolerances;
  std::size_t max_dim = kDefaultMaxDim;

  /// Throws ConfigInvalid.
  void check() const;
};

/// Record 0 describes the initial measurement; record k >= 1 the k-th
/// evolve -> measure cycle.
struct CycleRecord {
  std::size_t cycle_index = 0;
  /// I of the state entering the measurement, in nats (always <= 0).
  double info_total = 0.0;
  /// Drift of I across this cycle's evolution step.
  double info_drift = 0.0;
  /// -k_B sum_i I(rho_i) right after the measurement.
  double entropy_sum = 0.0;
  double correlation_info_before_collapse = 0.0;
  double delta_entropy = 0.0;
};

/// Sum of per-factor random Hermitian terms plus `coupling` times a global
/// random Hermitian term. Each term is scaled to unit spectral radius.
HermitianOperator build_interacting_hamiltonian(const Partition& p, double coupling,
                                                RngStream& rng);

/// Embeds a factor operator as I x ... x h x ... x I.
Matrix embed_local(const Matrix& local, const Partition& p, std::size_t factor);

/// Throws ConfigInvalid; numerical errors propagate.
std::vector<CycleRecord> run_cycle_experiment(const CycleConfig& cfg);

struct ChainConfig {
  struct Transition {
    enum class Kind { Fixed, Random };

    Kind kind = Kind::Random;
    std::optional<DoublyStochasticMatrix> matrix;
    std::size_t k_terms = 5;
    std::uint64_t seed = 0;
  };

  std::size_t n_states = 8;
  std::size_t n_steps = 100;
  Transition transition;
  ProbabilityVector initial = ProbabilityVector::point(8, 0);
  ToleranceSet tolerances;

  void check() const;
};

struct ChainStep {
  std::size_t step = 0;
  std::vector<double> entries;
  /// sum W ln W.
  double shannon_info = 0.0;
  /// lemma3_margin of the step that produced this distribution; 0 at step 0.
  double margin = 0.0;
};

/// The transition matrix a config resolves to.
DoublyStochasticMatrix chain_transition(const ChainConfig& cfg);

std::vector<ChainStep> run_classical_chain(const ChainConfig& cfg);

/// First step whose distribution is within `tol` (max-norm) of uniform.
std::optional<std::size_t> steps_to_uniform(const std::vector<ChainStep>& steps, double tol);

}  // namespace entroflow

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

#include "entroflow/cycle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "entroflow/composite.hpp"
#include "entroflow/errors.hpp"

namespace entroflow {
namespace {

Matrix unit_scale(const HermitianOperator& h) {
  const Spectrum spectrum = spectral_decompose(h);
  const double radius = std::max(std::abs(spectrum.eigenvalues.front()), std::abs(spectrum.eigenvalues.back()));
  if (radius == 0.0) return h.matrix();
  return h.matrix() / radius;
}

double summed_information(const std::vector<DensityOperator>& parts, const ToleranceSet& tol) {
  double sum = 0.0;
  for (const auto& part : parts) sum += information(part, tol);
  return sum;
}

DensityOperator initial_state(const CycleConfig& cfg) {
  if (cfg.initial.kind == InitialState::Kind::Given) return *cfg.initial.state;
  RngStream rng(cfg.initial.seed);
  std::vector<DensityOperator> factors;
  for (std::size_t d : cfg.partition.dims()) {
    factors.push_back(random_density(d, std::min(cfg.initial.rank, d), rng, cfg.tolerances));
  }
  return tensor_product(factors, cfg.tolerances);
}

}  // namespace

Matrix embed_local(const Matrix& local, const Partition& p, std::size_t factor) {
  if (factor >= p.factors()) {
    throw Error(ErrorCode::BadFactorIndex, "factor " + std::to_string(factor) + " of " +
                                               std::to_string(p.factors()));
  }
  if (static_cast<std::size_t>(local.rows()) != p.dim(factor) || local.rows() != local.cols()) {
    throw Error(ErrorCode::DimMismatch, "local operator does not match factor " + std::to_string(factor));
  }
  std::size_t left = 1;
  std::size_t right = 1;
  for (std::size_t i = 0; i < factor; ++i) left *= p.dim(i);
  for (std::size_t i = factor + 1; i < p.factors(); ++i) right *= p.dim(i);
  const std::size_t mid = p.dim(factor);
  const auto total = static_cast<Eigen::Index>(p.total_dim());
  Matrix out = Matrix::Zero(total, total);
  for (std::size_t l = 0; l < left; ++l) {
    for (std::size_t a = 0; a < mid; ++a) {
      for (std::size_t b = 0; b < mid; ++b) {
        const Complex value = local(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
        if (value == Complex(0.0)) continue;
        for (std::size_t r = 0; r < right; ++r) {
          out(static_cast<Eigen::Index>((l * mid + a) * right + r),
              static_cast<Eigen::Index>((l * mid + b) * right + r)) = value;
        }
      }
    }
  }
  return out;
}

HermitianOperator build_interacting_hamiltonian(const Partition& p, double coupling, RngStream& rng) {
  if (!(coupling >= 0.0)) {
    throw Error(ErrorCode::ConfigInvalid, "coupling strength must be non-negative");
  }
  const auto total = static_cast<Eigen::Index>(p.total_dim());
  Matrix h = Matrix::Zero(total, total);
  for (std::size_t i = 0; i < p.factors(); ++i) {
    h += embed_local(unit_scale(random_hermitian(p.dim(i), rng)), p, i);
  }
  // Drawn even at zero coupling so that the local terms depend only on the seed.
  const Matrix interaction = unit_scale(random_hermitian(p.total_dim(), rng));
  if (coupling > 0.0) h += coupling * interaction;
  return HermitianOperator::validate(h);
}

void CycleConfig::check() const {
  tolerances.check();
  if (partition.total_dim() > max_dim) {
    throw Error(ErrorCode::ConfigInvalid, "total dimension " + std::to_string(partition.total_dim()) +
                                              " exceeds the cap of " + std::to_string(max_dim));
  }
  if (!(coupling_strength >= 0.0)) throw Error(ErrorCode::ConfigInvalid, "coupling_strength must be >= 0");
  if (!(evolution_time >= 0.0) || !std::isfinite(evolution_time)) {
    throw Error(ErrorCode::ConfigInvalid, "evolution_time must be finite and >= 0");
  }
  if (!(k_b > 0.0)) throw Error(ErrorCode::ConfigInvalid, "k_B must be positive");
  if (initial.kind == InitialState::Kind::Given) {
    if (!initial.state) throw Error(ErrorCode::ConfigInvalid, "given initial state is missing");
    if (initial.state->dim() != partition.total_dim()) {
      throw Error(ErrorCode::ConfigInvalid, "initial state dim " + std::to_string(initial.state->dim()) +
                                                " does not match partition total " +
                                                std::to_string(partition.total_dim()));
    }
  } else if (initial.rank == 0) {
    throw Error(ErrorCode::ConfigInvalid, "initial rank must be >= 1");
  }
}

std::vector<CycleRecord> run_cycle_experiment(const CycleConfig& cfg) {
  cfg.check();
  const ToleranceSet& tol = cfg.tolerances;
  RngStream hamiltonian_rng(cfg.hamiltonian_seed);
  const HermitianOperator h =
      build_interacting_hamiltonian(cfg.partition, cfg.coupling_strength, hamiltonian_rng);
  const UnitaryOperator u = hamiltonian_unitary(h, cfg.evolution_time, tol);

  std::vector<CycleRecord> records;
  records.reserve(cfg.n_cycles + 1);

  DensityOperator state = initial_state(cfg);
  std::vector<DensityOperator> parts = marginals(state, cfg.partition, tol);
  double parts_info = summed_information(parts, tol);
  {
    CycleRecord first;
    first.info_total = information(state, tol);
    first.correlation_info_before_collapse = first.info_total - parts_info;
    first.entropy_sum = -cfg.k_b * parts_info;
    records.push_back(first);
  }
  state = collapse_to_product(state, cfg.partition, tol);

  for (std::size_t k = 1; k <= cfg.n_cycles; ++k) {
    const double before = information(state, tol);
    state = evolve(state, u, tol);
    CycleRecord record;
    record.cycle_index = k;
    record.info_total = information(state, tol);
    record.info_drift = record.info_total - before;
    parts = marginals(state, cfg.partition, tol);
    parts_info = summed_information(parts, tol);
    record.correlation_info_before_collapse = record.info_total - parts_info;
    record.entropy_sum = -cfg.k_b * parts_info;
    record.delta_entropy = record.entropy_sum - records.back().entropy_sum;
    records.push_back(record);
    state = collapse_to_product(state, cfg.partition, tol);
  }
  return records;
}

void ChainConfig::check() const {
  tolerances.check();
  if (n_states == 0) throw Error(ErrorCode::ConfigInvalid, "n_states must be >= 1");
  if (initial.size() != n_states) {
    throw Error(ErrorCode::ConfigInvalid, "initial distribution has " + std::to_string(initial.size()) +
                                              " entries, expected " + std::to_string(n_states));
  }
  if (transition.kind == Transition::Kind::Fixed) {
    if (!transition.matrix) throw Error(ErrorCode::ConfigInvalid, "fixed transition matrix is missing");
    if (transition.matrix->size() != n_states) {
      throw Error(ErrorCode::ConfigInvalid, "transition matrix order " +
                                                std::to_string(transition.matrix->size()) +
                                                " does not match n_states " + std::to_string(n_states));
    }
  } else if (transition.k_terms == 0) {
    throw Error(ErrorCode::ConfigInvalid, "k_terms must be >= 1");
  }
}

DoublyStochasticMatrix chain_transition(const ChainConfig& cfg) {
  if (cfg.transition.kind == ChainConfig::Transition::Kind::Fixed) return *cfg.transition.matrix;
  RngStream rng(cfg.transition.seed);
  return random_doubly_stochastic(cfg.n_states, cfg.transition.k_terms, rng);
}

std::vector<ChainStep> run_classical_chain(const ChainConfig& cfg) {
  cfg.check();
  const DoublyStochasticMatrix t = chain_transition(cfg);
  std::vector<ChainStep> steps;
  steps.reserve(cfg.n_steps + 1);
  ProbabilityVector w = cfg.initial;
  steps.push_back({0, w.entries(), information(w.entries(), cfg.tolerances), 0.0});
  for (std::size_t k = 1; k <= cfg.n_steps; ++k) {
    const double margin = lemma3_margin(w, t, cfg.tolerances);
    w = doubly_stochastic_apply(w, t, cfg.tolerances);
    steps.push_back({k, w.entries(), information(w.entries(), cfg.tolerances), margin});
  }
  return steps;
}

std::optional<std::size_t> steps_to_uniform(const std::vector<ChainStep>& steps, double tol) {
  for (const auto& s : steps) {
    const double target = 1.0 / static_cast<double>(s.entries.size());
    const bool close = std::all_of(s.entries.begin(), s.entries.end(),
                                   [&](double x) { return std::abs(x - target) <= tol; });
    if (close) return s.step;
  }
  return std::nullopt;
}

}  // namespace entroflow

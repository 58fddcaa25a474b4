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
#include <span>
#include <vector>

#include "entroflow/density.hpp"
#include "entroflow/partition.hpp"
#include "entroflow/rng.hpp"
#include "entroflow/tolerance.hpp"

namespace entroflow {

/// x ln x with the continuity convention 0 ln 0 = 0.
double xlogx(double x) noexcept;

/// Non-negative entries summing to one. Entries in [-tol.psd, 0) are clipped.
class ProbabilityVector {
 public:
  /// Throws NegativeInput or NotNormalized.
  static ProbabilityVector validate(std::vector<double> entries, const ToleranceSet& tol = {});
  static ProbabilityVector uniform(std::size_t n);
  static ProbabilityVector point(std::size_t n, std::size_t at);

  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<double>& entries() const noexcept { return entries_; }
  double operator[](std::size_t i) const { return entries_[i]; }

 private:
  explicit ProbabilityVector(std::vector<double> e) : entries_(std::move(e)) {}

  std::vector<double> entries_;
};

/// Non-negative square matrix with unit row and column sums, row-major.
class DoublyStochasticMatrix {
 public:
  /// Throws NotDoublyStochastic (or DimMismatch when entries.size() != n*n).
  static DoublyStochasticMatrix validate(std::size_t n, std::vector<double> entries,
                                         const ToleranceSet& tol = {});
  static DoublyStochasticMatrix identity(std::size_t n);
  static DoublyStochasticMatrix uniform(std::size_t n);
  /// Row i has its one at column perm[i].
  static DoublyStochasticMatrix permutation(const std::vector<std::size_t>& perm);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  const std::vector<double>& entries() const noexcept { return entries_; }

 private:
  DoublyStochasticMatrix(std::size_t n, std::vector<double> e) : n_(n), entries_(std::move(e)) {}

  std::size_t n_;
  std::vector<double> entries_;
};

/// Dense joint distribution over a product index set, stored flat in the
/// composite index order of its shape (first axis most significant).
class JointDistribution {
 public:
  /// Throws NegativeInput, NotNormalized or DimMismatch.
  static JointDistribution validate(std::vector<std::size_t> shape, std::vector<double> entries,
                                    const ToleranceSet& tol = {});
  static JointDistribution outer(const ProbabilityVector& a, const ProbabilityVector& b);

  const std::vector<std::size_t>& shape() const noexcept { return shape_; }
  const std::vector<double>& entries() const noexcept { return entries_; }
  double at(std::size_t row, std::size_t col) const { return entries_[row * shape_.at(1) + col]; }

  /// Sum over every axis except `axis`.
  std::vector<double> marginal(std::size_t axis) const;

 private:
  JointDistribution(std::vector<std::size_t> s, std::vector<double> e)
      : shape_(std::move(s)), entries_(std::move(e)) {}

  std::vector<std::size_t> shape_;
  std::vector<double> entries_;
};

// Margins: satisfied side minus bounding side, non-negative up to rounding.

/// x ln x - (x - 1). Throws NegativeInput for x < 0.
double lemma1_margin(double x);

/// sum x_i w_i ln w_i - wbar ln wbar with wbar = sum x_i w_i.
/// Throws LengthMismatch or NegativeInput.
double lemma2_margin(std::span<const double> w, const ProbabilityVector& x);

/// W'_j = sum_i W_i T_ij. Throws DimMismatch.
ProbabilityVector doubly_stochastic_apply(const ProbabilityVector& w,
                                          const DoublyStochasticMatrix& t,
                                          const ToleranceSet& tol = {});

/// sum W ln W - sum W' ln W'. Throws DimMismatch.
double lemma3_margin(const ProbabilityVector& w, const DoublyStochasticMatrix& t,
                     const ToleranceSet& tol = {});

/// sum W_ij ln W_ij - sum W_i ln W_i - sum W'_j ln W'_j for a two-axis joint.
/// Zero exactly when the joint is the outer product of its marginals.
/// Throws DimMismatch when the joint does not have two axes.
double lemma4_margin(const JointDistribution& w);

/// I(rho) - I(rho_a) - I(rho_b). Throws PartitionNotBipartite, DimMismatch.
double quantum_subadditivity_margin(const DensityOperator& rho, const Partition& p,
                                    const ToleranceSet& tol = {});

/// sum_k c_k P_k over k_terms uniform random permutations with weights drawn
/// uniformly from the simplex (sorted-spacings construction).
DoublyStochasticMatrix random_doubly_stochastic(std::size_t n, std::size_t k_terms,
                                                RngStream& rng);

std::vector<std::size_t> random_permutation(std::size_t n, RngStream& rng);

/// Uniform point on the probability simplex. Each entry is zeroed with
/// probability zero_fraction before renormalization (at least one entry is
/// kept) so that sweeps exercise the 0 ln 0 convention.
ProbabilityVector random_probability_vector(std::size_t n, RngStream& rng,
                                            double zero_fraction = 0.0);

}  // namespace entroflow

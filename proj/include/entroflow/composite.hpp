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
#include "entroflow/inequalities.hpp"
#include "entroflow/partition.hpp"

namespace entroflow {

/// One local orthonormal basis per factor; columns are the basis states.
class ProductBasis {
 public:
  explicit ProductBasis(std::vector<UnitaryOperator> factors);
  static ProductBasis standard(const Partition& p);

  const std::vector<UnitaryOperator>& factors() const noexcept { return factors_; }
  Partition partition() const;

 private:
  std::vector<UnitaryOperator> factors_;
};

/// Kronecker product in list order.
DensityOperator tensor_product(std::span<const DensityOperator> rhos, const ToleranceSet& tol = {});

/// Traces out a single factor of a matrix laid out by `dims`.
Matrix trace_out(const Matrix& m, std::span<const std::size_t> dims, std::size_t factor);

/// Reduced operator of factor `keep`. The other factors are traced out one at
/// a time in ascending index order. Throws DimMismatch, BadFactorIndex.
DensityOperator partial_trace(const DensityOperator& rho, const Partition& p, std::size_t keep,
                              const ToleranceSet& tol = {});

std::vector<DensityOperator> marginals(const DensityOperator& rho, const Partition& p,
                                       const ToleranceSet& tol = {});

/// Tensor product of all marginals. Idempotent.
DensityOperator collapse_to_product(const DensityOperator& rho, const Partition& p,
                                    const ToleranceSet& tol = {});

/// I(rho) - sum_i I(rho_i).
double correlation_information(const DensityOperator& rho, const Partition& p,
                               const ToleranceSet& tol = {});

/// Diagonal of rho in the product basis, shaped like the partition.
JointDistribution joint_distribution(const DensityOperator& rho, const Partition& p,
                                     const ProductBasis& basis, const ToleranceSet& tol = {});

/// Product basis built from the eigenvectors of every marginal.
ProductBasis natural_local_basis(const DensityOperator& rho, const Partition& p,
                                 const ToleranceSet& tol = {});

/// Information of the outcome distribution W'_m = sum_n |<n|m>|^2 W_n, where
/// |n> and W_n are the eigenpairs of rho and |m> the columns of `basis`.
/// Never exceeds information(rho) beyond rounding. Throws DimMismatch.
double projection_information(const DensityOperator& rho, const UnitaryOperator& basis,
                              const ToleranceSet& tol = {});

}  // namespace entroflow

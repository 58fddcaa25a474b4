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

#include "entroflow/composite.hpp"

#include <algorithm>
#include <string>

#include "entroflow/errors.hpp"

namespace entroflow {
namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

void require_partition(const DensityOperator& rho, const Partition& p) {
  if (p.total_dim() != rho.dim()) {
    throw Error(ErrorCode::DimMismatch, "partition total dim " + std::to_string(p.total_dim()) +
                                            " vs operator dim " + std::to_string(rho.dim()));
  }
}

}  // namespace

ProductBasis::ProductBasis(std::vector<UnitaryOperator> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw Error(ErrorCode::ConfigInvalid, "product basis needs at least one factor");
}

ProductBasis ProductBasis::standard(const Partition& p) {
  std::vector<UnitaryOperator> factors;
  for (std::size_t d : p.dims()) factors.push_back(UnitaryOperator::identity(d));
  return ProductBasis(std::move(factors));
}

Partition ProductBasis::partition() const {
  std::vector<std::size_t> dims;
  for (const auto& f : factors_) dims.push_back(f.dim());
  return Partition(std::move(dims));
}

DensityOperator tensor_product(std::span<const DensityOperator> rhos, const ToleranceSet& tol) {
  if (rhos.empty()) throw Error(ErrorCode::DimMismatch, "tensor product of an empty list");
  Matrix out = rhos.front().matrix();
  for (std::size_t i = 1; i < rhos.size(); ++i) out = kron(out, rhos[i].matrix());
  return DensityOperator::validate(out, tol);
}

Matrix trace_out(const Matrix& m, std::span<const std::size_t> dims, std::size_t factor) {
  if (factor >= dims.size()) {
    throw Error(ErrorCode::BadFactorIndex, "factor " + std::to_string(factor) + " of " +
                                               std::to_string(dims.size()));
  }
  std::size_t left = 1;
  std::size_t right = 1;
  for (std::size_t i = 0; i < factor; ++i) left *= dims[i];
  for (std::size_t i = factor + 1; i < dims.size(); ++i) right *= dims[i];
  const std::size_t mid = dims[factor];
  if (static_cast<std::size_t>(m.rows()) != left * mid * right || m.rows() != m.cols()) {
    throw Error(ErrorCode::DimMismatch, "matrix does not match the factor dimensions");
  }
  const auto reduced = static_cast<Eigen::Index>(left * right);
  Matrix out = Matrix::Zero(reduced, reduced);
  for (std::size_t l = 0; l < left; ++l) {
    for (std::size_t r = 0; r < right; ++r) {
      for (std::size_t lp = 0; lp < left; ++lp) {
        for (std::size_t rp = 0; rp < right; ++rp) {
          Complex sum = 0.0;
          for (std::size_t c = 0; c < mid; ++c) {
            sum += m(static_cast<Eigen::Index>((l * mid + c) * right + r),
                     static_cast<Eigen::Index>((lp * mid + c) * right + rp));
          }
          out(static_cast<Eigen::Index>(l * right + r), static_cast<Eigen::Index>(lp * right + rp)) = sum;
        }
      }
    }
  }
  return out;
}

DensityOperator partial_trace(const DensityOperator& rho, const Partition& p, std::size_t keep,
                              const ToleranceSet& tol) {
  require_partition(rho, p);
  if (keep >= p.factors()) {
    throw Error(ErrorCode::BadFactorIndex, "factor " + std::to_string(keep) + " of " +
                                               std::to_string(p.factors()));
  }
  Matrix current = rho.matrix();
  std::vector<std::size_t> dims = p.dims();
  std::size_t dropped = 0;
  for (std::size_t i = 0; i < p.factors(); ++i) {
    if (i == keep) continue;
    const std::size_t position = i - dropped;
    current = trace_out(current, dims, position);
    dims.erase(dims.begin() + static_cast<std::ptrdiff_t>(position));
    ++dropped;
  }
  return DensityOperator::validate(current, tol);
}

std::vector<DensityOperator> marginals(const DensityOperator& rho, const Partition& p,
                                       const ToleranceSet& tol) {
  std::vector<DensityOperator> out;
  out.reserve(p.factors());
  for (std::size_t i = 0; i < p.factors(); ++i) out.push_back(partial_trace(rho, p, i, tol));
  return out;
}

DensityOperator collapse_to_product(const DensityOperator& rho, const Partition& p,
                                    const ToleranceSet& tol) {
  const std::vector<DensityOperator> parts = marginals(rho, p, tol);
  Matrix out = tensor_product(parts, tol).matrix();
  // k marginals of a trace-t state multiply to trace t^k; without this,
  // rounding in the trace compounds geometrically under repeated collapse.
  out *= rho.matrix().trace().real() / out.trace().real();
  return DensityOperator::validate(out, tol);
}

double correlation_information(const DensityOperator& rho, const Partition& p, const ToleranceSet& tol) {
  double parts = 0.0;
  for (const auto& marginal : marginals(rho, p, tol)) parts += information(marginal, tol);
  return information(rho, tol) - parts;
}

JointDistribution joint_distribution(const DensityOperator& rho, const Partition& p,
                                     const ProductBasis& basis, const ToleranceSet& tol) {
  require_partition(rho, p);
  if (!(basis.partition() == p)) {
    throw Error(ErrorCode::DimMismatch, "product basis factors do not match the partition");
  }
  Matrix k = basis.factors().front().matrix();
  for (std::size_t i = 1; i < basis.factors().size(); ++i) k = kron(k, basis.factors()[i].matrix());
  std::vector<double> entries(rho.dim());
  for (Eigen::Index n = 0; n < k.cols(); ++n) {
    entries[static_cast<std::size_t>(n)] = (k.col(n).adjoint() * rho.matrix() * k.col(n)).value().real();
  }
  return JointDistribution::validate(p.dims(), std::move(entries), tol);
}

ProductBasis natural_local_basis(const DensityOperator& rho, const Partition& p, const ToleranceSet& tol) {
  std::vector<UnitaryOperator> factors;
  for (const auto& marginal : marginals(rho, p, tol)) {
    factors.push_back(UnitaryOperator::validate(spectral_decompose(marginal).eigenvectors, tol));
  }
  return ProductBasis(std::move(factors));
}

double projection_information(const DensityOperator& rho, const UnitaryOperator& basis,
                              const ToleranceSet& tol) {
  if (basis.dim() != rho.dim()) {
    throw Error(ErrorCode::DimMismatch, "basis dim " + std::to_string(basis.dim()) + " vs state dim " +
                                            std::to_string(rho.dim()));
  }
  const Spectrum spectrum = spectral_decompose(rho);
  const Matrix overlaps = spectrum.eigenvectors.adjoint() * basis.matrix();
  std::vector<double> projected(rho.dim(), 0.0);
  for (std::size_t n = 0; n < rho.dim(); ++n) {
    const double weight = std::max(spectrum.eigenvalues[n], 0.0);
    for (std::size_t m = 0; m < rho.dim(); ++m) {
      projected[m] += std::norm(overlaps(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m))) * weight;
    }
  }
  return information(projected, tol);
}

}  // namespace entroflow

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

#include <Eigen/Dense>

#include "entroflow/rng.hpp"
#include "entroflow/tolerance.hpp"

namespace entroflow {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Hermitian, unit-trace, positive-semidefinite state. Immutable once built;
/// the eigenvalues computed during validation are kept for information().
class DensityOperator {
 public:
  /// Throws NotHermitian, TraceNotOne or NotPositive.
  static DensityOperator validate(const Matrix& m, const ToleranceSet& tol = {});

  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  const Matrix& matrix() const noexcept { return matrix_; }
  /// Ascending, unclipped.
  const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }

 private:
  DensityOperator(Matrix m, std::vector<double> eigenvalues);

  Matrix matrix_;
  std::vector<double> eigenvalues_;
};

class UnitaryOperator {
 public:
  /// Throws NotUnitary when max |(U^dagger U - I)_ij| exceeds tol.unitary.
  static UnitaryOperator validate(const Matrix& m, const ToleranceSet& tol = {});
  static UnitaryOperator identity(std::size_t dim);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  const Matrix& matrix() const noexcept { return matrix_; }

 private:
  explicit UnitaryOperator(Matrix m) : matrix_(std::move(m)) {}

  Matrix matrix_;
};

class HermitianOperator {
 public:
  /// Throws NotHermitian. The stored matrix is the exact Hermitian part of m.
  static HermitianOperator validate(const Matrix& m, const ToleranceSet& tol = {});

  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  const Matrix& matrix() const noexcept { return matrix_; }

 private:
  explicit HermitianOperator(Matrix m) : matrix_(std::move(m)) {}

  Matrix matrix_;
};

/// Eigenvalues ascending; column k of eigenvectors pairs with eigenvalue k and
/// is phase-fixed so that its first nonzero component is real positive.
struct Spectrum {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;

  Matrix reconstruct() const;
};

/// Largest |a_ij - conj(a_ji)|.
double hermiticity_defect(const Matrix& m);
/// Largest |(U^dagger U - I)_ij|.
double unitarity_defect(const Matrix& m);

Spectrum spectral_decompose(const HermitianOperator& h);
Spectrum spectral_decompose(const DensityOperator& rho);

/// Sum of x ln x over eigenvalues, with 0 ln 0 = 0. Always <= 0.
double information(const DensityOperator& rho, const ToleranceSet& tol = {});
/// Same functional on a bare list of eigenvalues or probabilities. Entries in
/// [-tol.psd, 0] are treated as zero; anything lower throws NotPositive.
double information(std::span<const double> weights, const ToleranceSet& tol = {});
double entropy(const DensityOperator& rho, double k_b = 1.0, const ToleranceSet& tol = {});

/// U rho U^dagger. Throws DimMismatch.
DensityOperator evolve(const DensityOperator& rho, const UnitaryOperator& u,
                       const ToleranceSet& tol = {});

/// exp(-i H t) through the spectral decomposition of H.
UnitaryOperator hamiltonian_unitary(const HermitianOperator& h, double t,
                                    const ToleranceSet& tol = {});

/// A A^dagger / Tr(A A^dagger) with A a dim x rank matrix of complex normals,
/// filled row-major.
DensityOperator random_density(std::size_t dim, std::size_t rank, RngStream& rng,
                               const ToleranceSet& tol = {});

/// Q from the QR factorization of a complex Gaussian matrix, with column
/// phases chosen so that R has a real positive diagonal.
UnitaryOperator random_unitary(std::size_t dim, RngStream& rng, const ToleranceSet& tol = {});

/// (A + A^dagger) / 2 for a complex Gaussian A.
HermitianOperator random_hermitian(std::size_t dim, RngStream& rng);

}  // namespace entroflow

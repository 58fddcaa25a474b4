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

#include "entroflow/density.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "entroflow/errors.hpp"
#include "entroflow/inequalities.hpp"

namespace entroflow {
namespace {

// Components below this magnitude are treated as zero when fixing the phase
// of an eigenvector.
constexpr double kPhaseThreshold = 1e-10;

std::string describe(double value) {
  std::ostringstream os;
  os.precision(6);
  os << value;
  return os.str();
}

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::DimMismatch, std::string(what) + " must be square with dim >= 1, got " +
                                            std::to_string(m.rows()) + "x" +
                                            std::to_string(m.cols()));
  }
}

Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) * 0.5; }

Spectrum decompose_hermitian(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure,
                "Hermitian eigensolver did not converge (dim " + std::to_string(h.rows()) + ")");
  }
  Spectrum out;
  const auto& values = solver.eigenvalues();
  out.eigenvalues.assign(values.data(), values.data() + values.size());
  out.eigenvectors = solver.eigenvectors();
  for (Eigen::Index k = 0; k < out.eigenvectors.cols(); ++k) {
    auto column = out.eigenvectors.col(k);
    for (Eigen::Index i = 0; i < column.size(); ++i) {
      const double magnitude = std::abs(column(i));
      if (magnitude > kPhaseThreshold) {
        column *= std::conj(column(i)) / magnitude;
        column(i) = Complex(column(i).real(), 0.0);
        break;
      }
    }
  }
  return out;
}

std::vector<double> eigenvalues_only(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure,
                "Hermitian eigensolver did not converge (dim " + std::to_string(h.rows()) + ")");
  }
  const auto& values = solver.eigenvalues();
  return {values.data(), values.data() + values.size()};
}

}  // namespace

double hermiticity_defect(const Matrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_defect(const Matrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  const Matrix gram = m.adjoint() * m;
  return (gram - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

DensityOperator::DensityOperator(Matrix m, std::vector<double> eigenvalues)
    : matrix_(std::move(m)), eigenvalues_(std::move(eigenvalues)) {}

DensityOperator DensityOperator::validate(const Matrix& m, const ToleranceSet& tol) {
  require_square(m, "density operator");
  const double herm = hermiticity_defect(m);
  if (!(herm <= tol.herm)) {
    throw Error(ErrorCode::NotHermitian,
                "max |rho_ij - conj(rho_ji)| = " + describe(herm) + " exceeds " + describe(tol.herm));
  }
  const double trace = m.trace().real();
  if (!(std::abs(trace - 1.0) <= tol.trace)) {
    throw Error(ErrorCode::TraceNotOne, "|Tr rho - 1| = " + describe(std::abs(trace - 1.0)) +
                                            " (trace " + describe(trace) + ")");
  }
  Matrix h = hermitian_part(m);
  std::vector<double> values = eigenvalues_only(h);
  if (!(values.front() >= -tol.psd)) {
    throw Error(ErrorCode::NotPositive, "smallest eigenvalue " + describe(values.front()) +
                                            " is below -" + describe(tol.psd));
  }
  return DensityOperator(std::move(h), std::move(values));
}

UnitaryOperator UnitaryOperator::validate(const Matrix& m, const ToleranceSet& tol) {
  require_square(m, "unitary operator");
  const double defect = unitarity_defect(m);
  if (!(defect <= tol.unitary)) {
    throw Error(ErrorCode::NotUnitary,
                "max |(U^dagger U - I)_ij| = " + describe(defect) + " exceeds " + describe(tol.unitary));
  }
  return UnitaryOperator(m);
}

UnitaryOperator UnitaryOperator::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return UnitaryOperator(Matrix::Identity(n, n));
}

HermitianOperator HermitianOperator::validate(const Matrix& m, const ToleranceSet& tol) {
  require_square(m, "Hermitian operator");
  const double herm = hermiticity_defect(m);
  if (!(herm <= tol.herm)) {
    throw Error(ErrorCode::NotHermitian,
                "max |h_ij - conj(h_ji)| = " + describe(herm) + " exceeds " + describe(tol.herm));
  }
  return HermitianOperator(hermitian_part(m));
}

Matrix Spectrum::reconstruct() const {
  Eigen::VectorXcd values(static_cast<Eigen::Index>(eigenvalues.size()));
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
    values(static_cast<Eigen::Index>(k)) = eigenvalues[k];
  }
  return eigenvectors * values.asDiagonal() * eigenvectors.adjoint();
}

Spectrum spectral_decompose(const HermitianOperator& h) { return decompose_hermitian(h.matrix()); }

Spectrum spectral_decompose(const DensityOperator& rho) { return decompose_hermitian(rho.matrix()); }

double information(std::span<const double> weights, const ToleranceSet& tol) {
  double sum = 0.0;
  for (double w : weights) {
    if (w < -tol.psd) {
      throw Error(ErrorCode::NotPositive, "weight " + describe(w) + " is below -" + describe(tol.psd));
    }
    sum += xlogx(std::max(w, 0.0));
  }
  return sum;
}

double information(const DensityOperator& rho, const ToleranceSet& tol) {
  // Eigenvalues marginally above one from rounding would make this positive.
  return std::min(information(rho.eigenvalues(), tol), 0.0);
}

double entropy(const DensityOperator& rho, double k_b, const ToleranceSet& tol) {
  if (!(k_b > 0.0)) {
    throw Error(ErrorCode::NegativeInput, "k_B must be positive, got " + describe(k_b));
  }
  return -k_b * information(rho, tol);
}

DensityOperator evolve(const DensityOperator& rho, const UnitaryOperator& u, const ToleranceSet& tol) {
  if (rho.dim() != u.dim()) {
    throw Error(ErrorCode::DimMismatch, "state dim " + std::to_string(rho.dim()) +
                                            " vs unitary dim " + std::to_string(u.dim()));
  }
  const Matrix& um = u.matrix();
  Matrix out = hermitian_part(um * rho.matrix() * um.adjoint());
  // Restores the input trace; the factor is exactly 1 when U = I.
  out *= rho.matrix().trace().real() / out.trace().real();
  return DensityOperator::validate(out, tol);
}

UnitaryOperator hamiltonian_unitary(const HermitianOperator& h, double t, const ToleranceSet& tol) {
  if (t == 0.0) return UnitaryOperator::identity(h.dim());
  const Spectrum spectrum = spectral_decompose(h);
  Eigen::VectorXcd phases(static_cast<Eigen::Index>(spectrum.eigenvalues.size()));
  for (std::size_t k = 0; k < spectrum.eigenvalues.size(); ++k) {
    phases(static_cast<Eigen::Index>(k)) = std::polar(1.0, -spectrum.eigenvalues[k] * t);
  }
  const Matrix& v = spectrum.eigenvectors;
  return UnitaryOperator::validate(v * phases.asDiagonal() * v.adjoint(), tol);
}

DensityOperator random_density(std::size_t dim, std::size_t rank, RngStream& rng,
                               const ToleranceSet& tol) {
  if (dim == 0 || rank == 0 || rank > dim) {
    throw Error(ErrorCode::DimMismatch, "random_density needs 1 <= rank <= dim, got rank " +
                                            std::to_string(rank) + ", dim " + std::to_string(dim));
  }
  const auto rows = static_cast<Eigen::Index>(dim);
  const auto cols = static_cast<Eigen::Index>(rank);
  Matrix a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = rng.complex_normal();
  }
  Matrix m = a * a.adjoint();
  m /= m.trace().real();
  return DensityOperator::validate(hermitian_part(m), tol);
}

UnitaryOperator random_unitary(std::size_t dim, RngStream& rng, const ToleranceSet& tol) {
  if (dim == 0) throw Error(ErrorCode::DimMismatch, "random_unitary needs dim >= 1");
  const auto n = static_cast<Eigen::Index>(dim);
  constexpr int kAttempts = 4;  // first draw plus three retries
  double smallest = 0.0;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    Matrix z(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) z(i, j) = rng.complex_normal();
    }
    Eigen::HouseholderQR<Matrix> qr(z);
    const Matrix& packed = qr.matrixQR();
    smallest = INFINITY;
    for (Eigen::Index j = 0; j < n; ++j) smallest = std::min(smallest, std::abs(packed(j, j)));
    if (smallest <= 1e-12 * z.norm()) continue;
    Matrix q = qr.householderQ();
    for (Eigen::Index j = 0; j < n; ++j) q.col(j) *= packed(j, j) / std::abs(packed(j, j));
    return UnitaryOperator::validate(q, tol);
  }
  throw Error(ErrorCode::DegenerateDraw, "Gaussian draw singular after " +
                                             std::to_string(kAttempts) + " attempts (min |R_jj| " +
                                             describe(smallest) + ")");
}

HermitianOperator random_hermitian(std::size_t dim, RngStream& rng) {
  if (dim == 0) throw Error(ErrorCode::DimMismatch, "random_hermitian needs dim >= 1");
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = rng.complex_normal();
  }
  return HermitianOperator::validate(hermitian_part(a));
}

}  // namespace entroflow

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

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>

#include "entroflow/composite.hpp"
#include "entroflow/density.hpp"
#include "entroflow/errors.hpp"
#include "oracles.hpp"

using namespace entroflow;

namespace {

Matrix diag(std::initializer_list<double> values) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(values.size()), static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an entroflow::Error");
  return ErrorCode::ConfigInvalid;
}

Matrix maximally_mixed(Eigen::Index d) { return Matrix::Identity(d, d) / static_cast<double>(d); }

}  // namespace

TEST_CASE("validate_density accepts states and rejects each broken invariant") {
  CHECK(DensityOperator::validate(maximally_mixed(2)).dim() == 2);
  CHECK(DensityOperator::validate(diag({1.0, 0.0})).dim() == 2);

  CHECK(code_of([] { DensityOperator::validate(diag({0.6, 0.6})); }) == ErrorCode::TraceNotOne);
  CHECK(code_of([] { DensityOperator::validate(diag({1.5, -0.5})); }) == ErrorCode::NotPositive);
  Matrix skew = maximally_mixed(2);
  skew(0, 1) = 0.1;
  CHECK(code_of([&] { DensityOperator::validate(skew); }) == ErrorCode::NotHermitian);
  CHECK(code_of([] { DensityOperator::validate(Matrix(2, 3)); }) == ErrorCode::DimMismatch);

  try {
    DensityOperator::validate(diag({0.6, 0.6}));
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("0.2") != std::string::npos);
  }

  // Drift inside tol_psd is accepted, and information treats it as zero.
  const auto drifted = DensityOperator::validate(diag({1.0 + 5e-10, -5e-10}));
  CHECK(information(drifted) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("spectral_decompose") {
  SUBCASE("diagonal input gives standard basis") {
    const auto s = spectral_decompose(HermitianOperator::validate(diag({0.25, 0.75})));
    CHECK(s.eigenvalues[0] == doctest::Approx(0.25));
    CHECK(s.eigenvalues[1] == doctest::Approx(0.75));
    CHECK(oracle::max_abs_diff(s.eigenvectors, Matrix::Identity(2, 2)) < 1e-12);
  }
  SUBCASE("2x2 closed form") {
    Matrix m(2, 2);
    m << 0.5, 0.5, 0.5, 0.5;
    const auto [lo, hi] = oracle::eigenvalues_2x2(m);
    CHECK(lo == doctest::Approx(0.0));
    CHECK(hi == doctest::Approx(1.0));
    const auto s = spectral_decompose(HermitianOperator::validate(m));
    CHECK(std::abs(s.eigenvalues[0] - lo) < 1e-12);
    CHECK(std::abs(s.eigenvalues[1] - hi) < 1e-12);
  }
  SUBCASE("random Hermitian reconstructs, ascending, canonical phases") {
    RngStream rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
      const auto h = random_hermitian(8, rng);
      const auto s = spectral_decompose(h);
      CHECK(oracle::max_abs_diff(s.reconstruct(), h.matrix()) <= ToleranceSet{}.spec);
      CHECK(unitarity_defect(s.eigenvectors) <= ToleranceSet{}.unitary);
      CHECK(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
      for (Eigen::Index k = 0; k < s.eigenvectors.cols(); ++k) {
        Eigen::Index first = 0;
        while (std::abs(s.eigenvectors(first, k)) <= 1e-10) ++first;
        CHECK(s.eigenvectors(first, k).imag() == 0.0);
        CHECK(s.eigenvectors(first, k).real() > 0.0);
      }
      const auto again = spectral_decompose(h);
      CHECK(again.eigenvalues == s.eigenvalues);
      CHECK(again.eigenvectors == s.eigenvectors);
    }
  }
}

TEST_CASE("information and entropy") {
  const ToleranceSet tol;
  CHECK(information(DensityOperator::validate(diag({1.0, 0.0}))) == 0.0);
  CHECK(information(DensityOperator::validate(maximally_mixed(2))) ==
        doctest::Approx(-std::numbers::ln2).epsilon(1e-12));
  // Direct scalar evaluation: 0.5 ln 0.5 + 2 * 0.25 ln 0.25 = -1.5 ln 2.
  const double direct = 0.5 * std::log(0.5) + 2 * 0.25 * std::log(0.25);
  CHECK(direct == doctest::Approx(-1.039721).epsilon(1e-6));
  CHECK(std::abs(information(DensityOperator::validate(diag({0.5, 0.25, 0.25}))) - direct) < 1e-12);

  for (Eigen::Index d : {1, 2, 3, 7, 16}) {
    CHECK(entropy(DensityOperator::validate(maximally_mixed(d))) ==
          doctest::Approx(std::log(static_cast<double>(d))).epsilon(1e-12));
  }
  CHECK(entropy(DensityOperator::validate(diag({0.0, 1.0})), kBoltzmannSI) == 0.0);
  const double si = entropy(DensityOperator::validate(maximally_mixed(2)), kBoltzmannSI);
  CHECK(si == doctest::Approx(kBoltzmannSI * std::numbers::ln2).epsilon(1e-12));
  CHECK(si == doctest::Approx(9.57e-24).epsilon(0.005));

  const std::vector<double> bad{0.5, 0.6, -0.1};
  CHECK(code_of([&] { information(bad, tol); }) == ErrorCode::NotPositive);
  CHECK(code_of([] { entropy(DensityOperator::validate(Matrix::Identity(1, 1)), 0.0); }) ==
        ErrorCode::NegativeInput);
}

TEST_CASE("information is bounded for every state") {
  RngStream rng(5);
  const ToleranceSet tol;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t dim = 1 + rng.index(12);
    const std::size_t rank = 1 + rng.index(dim);
    const auto rho = random_density(dim, rank, rng);
    const double info = information(rho);
    CHECK(info <= tol.entropy);
    CHECK(info >= -std::log(static_cast<double>(dim)) - tol.entropy);
    const double s = entropy(rho);
    CHECK(s >= 0.0);
    // Zero entropy exactly for pure states (an eigenvalue at one).
    const bool pure = rho.eigenvalues().back() >= 1.0 - tol.psd;
    CHECK((s <= tol.entropy) == pure);
    if (rank == 1) CHECK(pure);
  }
}

TEST_CASE("evolve") {
  RngStream rng(11);
  const ToleranceSet tol;
  const auto rho = random_density(4, 4, rng);
  const auto same = evolve(rho, UnitaryOperator::identity(4));
  CHECK(same.matrix() == rho.matrix());
  CHECK(information(same) == information(rho));

  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 1 + rng.index(16);
    const auto r = random_density(dim, 1 + rng.index(dim), rng);
    const auto u = random_unitary(dim, rng);
    CHECK(std::abs(information(evolve(r, u)) - information(r)) <= tol.conserve);
  }

  CHECK(code_of([&] { evolve(rho, UnitaryOperator::identity(3)); }) == ErrorCode::DimMismatch);

  SUBCASE("swap exchanges the factors of a product") {
    const auto a = random_density(2, 2, rng);
    const auto b = random_density(3, 3, rng);
    // S |i j> = |j i>, built by index permutation.
    Matrix swap = Matrix::Zero(6, 6);
    for (Eigen::Index i = 0; i < 2; ++i)
      for (Eigen::Index j = 0; j < 3; ++j) swap(j * 2 + i, i * 3 + j) = 1.0;
    const auto ab = oracle::kron(a.matrix(), b.matrix());
    const auto ba = oracle::kron(b.matrix(), a.matrix());
    const auto out = evolve(DensityOperator::validate(ab), UnitaryOperator::validate(swap));
    CHECK(oracle::max_abs_diff(out.matrix(), ba) < 1e-14);
  }
}

TEST_CASE("hamiltonian_unitary") {
  RngStream rng(3);
  const ToleranceSet tol;
  const auto h = random_hermitian(5, rng);
  CHECK(hamiltonian_unitary(h, 0.0).matrix() == Matrix::Identity(5, 5));

  const auto diag_h = HermitianOperator::validate(diag({0.0, std::numbers::pi}));
  const auto u = hamiltonian_unitary(diag_h, 1.0);
  CHECK(oracle::max_abs_diff(u.matrix(), diag({1.0, -1.0})) < 1e-12);

  const auto u1 = hamiltonian_unitary(h, 0.3);
  const auto u2 = hamiltonian_unitary(h, 1.1);
  const auto u12 = hamiltonian_unitary(h, 1.4);
  CHECK(oracle::max_abs_diff(u1.matrix() * u2.matrix(), u12.matrix()) <= tol.unitary);

  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_hermitian(1 + rng.index(10), rng);
    const double t = 4.0 * rng.uniform() - 2.0;
    const Matrix round_trip = hamiltonian_unitary(g, t).matrix() * hamiltonian_unitary(g, -t).matrix();
    CHECK(oracle::max_abs_diff(round_trip, Matrix::Identity(round_trip.rows(), round_trip.cols())) <=
          tol.unitary);
  }
}

TEST_CASE("random_density") {
  RngStream rng(17);
  const auto pure = random_density(5, 1, rng);
  CHECK(std::abs(information(pure)) <= ToleranceSet{}.entropy);

  RngStream a(77);
  RngStream b(77);
  const auto ra = random_density(2, 2, a);
  const auto rb = random_density(2, 2, b);
  CHECK(std::memcmp(ra.matrix().data(), rb.matrix().data(), sizeof(Complex) * 4) == 0);

  for (int i = 0; i < 1000; ++i) {
    const auto r = random_density(4, 1 + rng.index(4), rng);
    CHECK_NOTHROW(DensityOperator::validate(r.matrix()));
  }

  CHECK(code_of([&] { random_density(3, 4, rng); }) == ErrorCode::DimMismatch);
  CHECK(code_of([&] { random_density(3, 0, rng); }) == ErrorCode::DimMismatch);
}

TEST_CASE("random_unitary") {
  RngStream rng(23);
  const auto scalar = random_unitary(1, rng);
  CHECK(std::abs(std::abs(scalar.matrix()(0, 0)) - 1.0) < 1e-15);
  for (int i = 0; i < 200; ++i) {
    const auto u = random_unitary(1 + rng.index(16), rng);
    CHECK(unitarity_defect(u.matrix()) <= ToleranceSet{}.unitary);
  }
  RngStream fixed(4);
  const auto u = random_unitary(4, fixed);
  const auto rho = random_density(4, 3, fixed);
  CHECK(std::abs(information(evolve(rho, u)) - information(rho)) <= ToleranceSet{}.conserve);

  RngStream again(4);
  CHECK(random_unitary(4, again).matrix() == u.matrix());

  Matrix not_unitary = Matrix::Identity(2, 2) * 1.1;
  CHECK(code_of([&] { UnitaryOperator::validate(not_unitary); }) == ErrorCode::NotUnitary);
}

TEST_CASE("the average of random unitaries is close to zero") {
  // E[U] = 0 under the invariant measure; a missing phase fix shows up here.
  RngStream rng(31);
  constexpr int n = 4000;
  Matrix mean = Matrix::Zero(3, 3);
  for (int i = 0; i < n; ++i) mean += random_unitary(3, rng).matrix();
  mean /= n;
  // |U_ij|^2 has mean 1/3, so each entry's standard error is about sqrt(1/(3n)).
  CHECK(mean.cwiseAbs().maxCoeff() < 5.0 * std::sqrt(1.0 / (3.0 * n)));
}

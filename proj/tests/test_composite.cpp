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
#include <numbers>

#include "entroflow/composite.hpp"
#include "entroflow/errors.hpp"
#include "oracles.hpp"

using namespace entroflow;

namespace {

DensityOperator bell_state() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
  return DensityOperator::validate(m);
}

DensityOperator mixed(Eigen::Index d) {
  return DensityOperator::validate(Matrix::Identity(d, d) / static_cast<double>(d));
}

DensityOperator product_of(std::vector<DensityOperator> parts) { return tensor_product(parts); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an entroflow::Error");
  return ErrorCode::ConfigInvalid;
}

Partition random_partition(RngStream& rng, std::size_t max_total) {
  for (;;) {
    const std::size_t k = 1 + rng.index(4);
    std::vector<std::size_t> dims;
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) {
      dims.push_back(1 + rng.index(4));
      total *= dims.back();
    }
    if (total <= max_total && total >= 2) return Partition(dims);
  }
}

}  // namespace

TEST_CASE("partition index convention is first-factor-most-significant") {
  const Partition p{2, 3, 4};
  CHECK(p.total_dim() == 24);
  CHECK(p.join({1, 2, 3}) == 1 * 12 + 2 * 4 + 3);
  for (std::size_t n = 0; n < 24; ++n) CHECK(p.join(p.split(n)) == n);
  CHECK(code_of([] { Partition(std::vector<std::size_t>{}); }) == ErrorCode::ConfigInvalid);
  CHECK(code_of([] { Partition{2, 0}; }) == ErrorCode::ConfigInvalid);
}

TEST_CASE("tensor_product") {
  const auto m4 = product_of({mixed(2), mixed(2)});
  CHECK(oracle::max_abs_diff(m4.matrix(), Matrix::Identity(4, 4) / 4.0) < 1e-15);

  Matrix pure = Matrix::Zero(2, 2);
  pure(1, 1) = 1.0;
  const auto pp = product_of({DensityOperator::validate(pure), DensityOperator::validate(pure)});
  CHECK(information(pp) == 0.0);

  RngStream rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_density(2, 1 + rng.index(2), rng);
    const auto b = random_density(3, 1 + rng.index(3), rng);
    const auto ab = product_of({a, b});
    CHECK(oracle::max_abs_diff(ab.matrix(), oracle::kron(a.matrix(), b.matrix())) < 1e-15);
    // Information of the 6x6 product from the oracle eigensolver.
    const double joint = oracle::sum_xlogx(oracle::hermitian_eigenvalues(ab.matrix()));
    CHECK(std::abs(joint - (information(a) + information(b))) < 1e-9);
    CHECK(std::abs(information(ab) - (information(a) + information(b))) < 1e-9);
  }
}

TEST_CASE("partial_trace") {
  RngStream rng(12);
  const auto a = random_density(2, 2, rng);
  const auto b = random_density(3, 2, rng);
  const Partition p{2, 3};
  const auto ab = product_of({a, b});
  CHECK(oracle::max_abs_diff(partial_trace(ab, p, 0).matrix(), a.matrix()) <= 1e-9);
  CHECK(oracle::max_abs_diff(partial_trace(ab, p, 1).matrix(), b.matrix()) <= 1e-9);

  for (std::size_t keep : {0u, 1u}) {
    CHECK(oracle::max_abs_diff(partial_trace(bell_state(), Partition{2, 2}, keep).matrix(),
                               Matrix::Identity(2, 2) / 2.0) < 1e-15);
  }

  for (int trial = 0; trial < 100; ++trial) {
    const Partition q = random_partition(rng, 48);
    const auto rho = random_density(q.total_dim(), 1 + rng.index(q.total_dim()), rng);
    for (std::size_t keep = 0; keep < q.factors(); ++keep) {
      const auto reduced = partial_trace(rho, q, keep);
      CHECK(oracle::max_abs_diff(reduced.matrix(), oracle::partial_trace(rho.matrix(), q.dims(), keep)) < 1e-12);
      CHECK(std::abs(reduced.matrix().trace().real() - 1.0) < 1e-12);
    }
  }

  CHECK(code_of([&] { partial_trace(ab, Partition{3, 3}, 0); }) == ErrorCode::DimMismatch);
  CHECK(code_of([&] { partial_trace(ab, p, 2); }) == ErrorCode::BadFactorIndex);
}

TEST_CASE("partial_trace does not depend on the order factors are removed") {
  RngStream rng(40);
  const std::vector<std::size_t> dims{2, 3, 2};
  const auto rho = random_density(12, 5, rng);
  // Keep factor 1: remove 0 then (old 2 -> new 1), versus 2 then 0.
  const Matrix ascending = trace_out(trace_out(rho.matrix(), dims, 0), std::vector<std::size_t>{3, 2}, 1);
  const Matrix descending = trace_out(trace_out(rho.matrix(), dims, 2), std::vector<std::size_t>{2, 3}, 0);
  CHECK(oracle::max_abs_diff(ascending, descending) < 1e-15);
}

TEST_CASE("partial_trace is linear") {
  RngStream rng(41);
  const Partition p{2, 4};
  const auto r1 = random_density(8, 3, rng);
  const auto r2 = random_density(8, 8, rng);
  const double w = 0.3;
  const auto mix = DensityOperator::validate(w * r1.matrix() + (1 - w) * r2.matrix());
  for (std::size_t keep : {0u, 1u}) {
    const Matrix lhs = partial_trace(mix, p, keep).matrix();
    const Matrix rhs = w * partial_trace(r1, p, keep).matrix() + (1 - w) * partial_trace(r2, p, keep).matrix();
    CHECK(oracle::max_abs_diff(lhs, rhs) < 1e-14);
  }
}

TEST_CASE("collapse_to_product and correlation_information") {
  const Partition p2{2, 2};
  const auto bell = bell_state();
  const auto collapsed = collapse_to_product(bell, p2);
  CHECK(oracle::max_abs_diff(collapsed.matrix(), Matrix::Identity(4, 4) / 4.0) < 1e-15);
  CHECK(information(bell) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(information(collapsed) == doctest::Approx(-2 * std::numbers::ln2).epsilon(1e-12));
  CHECK(correlation_information(bell, p2) == doctest::Approx(2 * std::numbers::ln2).epsilon(1e-12));

  RngStream rng(13);
  const ToleranceSet tol;
  for (int trial = 0; trial < 100; ++trial) {
    const Partition q = random_partition(rng, 36);
    std::vector<DensityOperator> parts;
    for (std::size_t d : q.dims()) parts.push_back(random_density(d, 1 + rng.index(d), rng));
    const auto product = tensor_product(parts);
    CHECK(oracle::max_abs_diff(collapse_to_product(product, q).matrix(), product.matrix()) <= tol.spec);
    CHECK(std::abs(correlation_information(product, q)) <= tol.entropy);

    const auto rho = random_density(q.total_dim(), 1 + rng.index(q.total_dim()), rng);
    const auto once = collapse_to_product(rho, q);
    const auto twice = collapse_to_product(once, q);
    CHECK(oracle::max_abs_diff(once.matrix(), twice.matrix()) <= tol.spec);
    CHECK(information(once) <= information(rho) + tol.entropy);
    const double corr = correlation_information(rho, q);
    CHECK(corr >= -tol.entropy);
    CHECK(std::abs(corr - (information(rho) - information(once))) < 1e-9);
    // Recursive subadditivity over every factor.
    double parts_info = 0.0;
    for (const auto& m : marginals(rho, q)) parts_info += information(m);
    CHECK(parts_info <= information(rho) + static_cast<double>(q.factors()) * tol.entropy);
  }
}

TEST_CASE("generic correlated states are not fixed points of collapse") {
  RngStream rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = random_density(6, 2, rng);
    const auto collapsed = collapse_to_product(rho, Partition{2, 3});
    CHECK(correlation_information(rho, Partition{2, 3}) > 1e-6);
    CHECK(oracle::max_abs_diff(collapsed.matrix(), rho.matrix()) > 1e-6);
  }
}

TEST_CASE("joint_distribution") {
  const Partition p{2, 2};
  const auto uniform = joint_distribution(mixed(4), p, ProductBasis::standard(p));
  for (double w : uniform.entries()) CHECK(w == doctest::Approx(0.25));

  const auto bell = joint_distribution(bell_state(), p, ProductBasis::standard(p));
  const std::vector<double> expected{0.5, 0.0, 0.0, 0.5};
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(bell.entries()[i] - expected[i]) < 1e-15);

  RngStream rng(15);
  for (int trial = 0; trial < 50; ++trial) {
    const Partition q{2 + rng.index(2), 2 + rng.index(3)};
    const auto rho = random_density(q.total_dim(), 1 + rng.index(q.total_dim()), rng);
    const ProductBasis basis({random_unitary(q.dim(0), rng), random_unitary(q.dim(1), rng)});
    const auto joint = joint_distribution(rho, q, basis);
    double sum = 0.0;
    for (double w : joint.entries()) {
      CHECK(w >= 0.0);
      sum += w;
    }
    CHECK(std::abs(sum - 1.0) <= ToleranceSet{}.trace);
    // Marginals of the joint are the distributions of the reduced operators.
    for (std::size_t f = 0; f < 2; ++f) {
      const auto reduced = partial_trace(rho, q, f);
      const auto single = joint_distribution(reduced, Partition{q.dim(f)}, ProductBasis({basis.factors()[f]}));
      const auto marginal = joint.marginal(f);
      for (std::size_t i = 0; i < marginal.size(); ++i) CHECK(std::abs(marginal[i] - single.entries()[i]) < 1e-12);
    }
    // Product states give product joints.
    const auto a = random_density(q.dim(0), q.dim(0), rng);
    const auto b = random_density(q.dim(1), 1, rng);
    const auto pj = joint_distribution(product_of({a, b}), q, basis);
    const auto ra = pj.marginal(0);
    const auto rb = pj.marginal(1);
    for (std::size_t i = 0; i < ra.size(); ++i)
      for (std::size_t j = 0; j < rb.size(); ++j) CHECK(std::abs(pj.at(i, j) - ra[i] * rb[j]) < 1e-9);
  }

  CHECK(code_of([&] { joint_distribution(mixed(4), Partition{2, 2}, ProductBasis::standard(Partition{4})); }) ==
        ErrorCode::DimMismatch);
}

TEST_CASE("projection_information") {
  RngStream rng(16);
  const ToleranceSet tol;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + rng.index(8);
    const auto rho = random_density(d, 1 + rng.index(d), rng);
    const auto eigen = UnitaryOperator::validate(spectral_decompose(rho).eigenvectors);
    CHECK(std::abs(projection_information(rho, eigen) - information(rho)) <= 1e-9);
    const auto u = random_unitary(d, rng);
    CHECK(projection_information(rho, u) <= information(rho) + tol.entropy);
    CHECK(projection_information(mixed(static_cast<Eigen::Index>(d)), u) ==
          doctest::Approx(-std::log(static_cast<double>(d))).epsilon(1e-12));
  }

  // Lemma 3 route: the same W' through an explicit doubly stochastic matrix.
  for (int trial = 0; trial < 50; ++trial) {
    const auto rho = random_density(8, 1 + rng.index(8), rng);
    const auto basis = random_unitary(8, rng);
    const auto spectrum = spectral_decompose(rho);
    const Matrix overlaps = spectrum.eigenvectors.adjoint() * basis.matrix();
    std::vector<double> t(64);
    for (Eigen::Index n = 0; n < 8; ++n)
      for (Eigen::Index m = 0; m < 8; ++m) t[static_cast<std::size_t>(n * 8 + m)] = std::norm(overlaps(n, m));
    std::vector<double> w(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end());
    const auto image = doubly_stochastic_apply(ProbabilityVector::validate(w),
                                               DoublyStochasticMatrix::validate(8, t));
    double via_lemma3 = 0.0;
    for (double x : image.entries()) via_lemma3 += xlogx(x);
    CHECK(std::abs(projection_information(rho, basis) - via_lemma3) < 1e-12);
  }

  CHECK(code_of([&] { projection_information(mixed(4), UnitaryOperator::identity(3)); }) == ErrorCode::DimMismatch);
}

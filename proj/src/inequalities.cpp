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

#include "entroflow/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "entroflow/composite.hpp"
#include "entroflow/errors.hpp"

namespace entroflow {
namespace {

std::string describe(double value) {
  std::ostringstream os;
  os.precision(6);
  os << value;
  return os.str();
}

// Summed in sorted order so that any permutation of the same multiset gives
// a bit-identical result.
double sorted_xlogx_sum(std::vector<double> values) {
  for (double& v : values) v = xlogx(v);
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum;
}

void clip_and_check(std::vector<double>& entries, const ToleranceSet& tol, const char* what) {
  for (double& e : entries) {
    if (!(e >= -tol.psd)) {
      throw Error(ErrorCode::NegativeInput,
                  std::string(what) + " entry " + describe(e) + " is below -" + describe(tol.psd));
    }
    e = std::max(e, 0.0);
  }
  const double sum = std::accumulate(entries.begin(), entries.end(), 0.0);
  if (!(std::abs(sum - 1.0) <= tol.trace)) {
    throw Error(ErrorCode::NotNormalized,
                std::string(what) + " sums to " + describe(sum) + ", not 1");
  }
}

}  // namespace

double xlogx(double x) noexcept { return x > 0.0 ? x * std::log(x) : 0.0; }

ProbabilityVector ProbabilityVector::validate(std::vector<double> entries, const ToleranceSet& tol) {
  clip_and_check(entries, tol, "probability vector");
  return ProbabilityVector(std::move(entries));
}

ProbabilityVector ProbabilityVector::uniform(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::NotNormalized, "empty probability vector");
  return ProbabilityVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

ProbabilityVector ProbabilityVector::point(std::size_t n, std::size_t at) {
  if (at >= n) throw Error(ErrorCode::DimMismatch, "point mass index out of range");
  std::vector<double> e(n, 0.0);
  e[at] = 1.0;
  return ProbabilityVector(std::move(e));
}

DoublyStochasticMatrix DoublyStochasticMatrix::validate(std::size_t n, std::vector<double> entries,
                                                        const ToleranceSet& tol) {
  if (n == 0 || entries.size() != n * n) {
    throw Error(ErrorCode::DimMismatch, "doubly stochastic matrix of order " + std::to_string(n) +
                                            " needs " + std::to_string(n * n) + " entries, got " +
                                            std::to_string(entries.size()));
  }
  for (double& e : entries) {
    if (!(e >= -tol.psd)) {
      throw Error(ErrorCode::NotDoublyStochastic, "negative entry " + describe(e));
    }
    e = std::max(e, 0.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    double col = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      row += entries[i * n + j];
      col += entries[j * n + i];
    }
    if (!(std::abs(row - 1.0) <= tol.trace) || !(std::abs(col - 1.0) <= tol.trace)) {
      throw Error(ErrorCode::NotDoublyStochastic, "row " + std::to_string(i) + " sums to " +
                                                      describe(row) + ", column " + std::to_string(i) +
                                                      " sums to " + describe(col));
    }
  }
  return DoublyStochasticMatrix(n, std::move(entries));
}

DoublyStochasticMatrix DoublyStochasticMatrix::identity(std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  return permutation(perm);
}

DoublyStochasticMatrix DoublyStochasticMatrix::uniform(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::DimMismatch, "empty doubly stochastic matrix");
  return DoublyStochasticMatrix(n, std::vector<double>(n * n, 1.0 / static_cast<double>(n)));
}

DoublyStochasticMatrix DoublyStochasticMatrix::permutation(const std::vector<std::size_t>& perm) {
  const std::size_t n = perm.size();
  if (n == 0) throw Error(ErrorCode::DimMismatch, "empty permutation");
  std::vector<bool> seen(n, false);
  std::vector<double> e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (perm[i] >= n || seen[perm[i]]) {
      throw Error(ErrorCode::NotDoublyStochastic, "not a permutation of 0.." + std::to_string(n - 1));
    }
    seen[perm[i]] = true;
    e[i * n + perm[i]] = 1.0;
  }
  return DoublyStochasticMatrix(n, std::move(e));
}

JointDistribution JointDistribution::validate(std::vector<std::size_t> shape,
                                              std::vector<double> entries, const ToleranceSet& tol) {
  std::size_t total = shape.empty() ? 0 : 1;
  for (std::size_t d : shape) total *= d;
  if (total == 0 || total != entries.size()) {
    throw Error(ErrorCode::DimMismatch, "joint distribution shape does not match " +
                                            std::to_string(entries.size()) + " entries");
  }
  clip_and_check(entries, tol, "joint distribution");
  return JointDistribution(std::move(shape), std::move(entries));
}

JointDistribution JointDistribution::outer(const ProbabilityVector& a, const ProbabilityVector& b) {
  std::vector<double> e;
  e.reserve(a.size() * b.size());
  for (double x : a.entries()) {
    for (double y : b.entries()) e.push_back(x * y);
  }
  return JointDistribution({a.size(), b.size()}, std::move(e));
}

std::vector<double> JointDistribution::marginal(std::size_t axis) const {
  if (axis >= shape_.size()) throw Error(ErrorCode::BadFactorIndex, "no axis " + std::to_string(axis));
  std::size_t stride = 1;
  for (std::size_t i = axis + 1; i < shape_.size(); ++i) stride *= shape_[i];
  std::vector<double> out(shape_[axis], 0.0);
  for (std::size_t n = 0; n < entries_.size(); ++n) out[(n / stride) % shape_[axis]] += entries_[n];
  return out;
}

double lemma1_margin(double x) {
  if (!(x >= 0.0)) throw Error(ErrorCode::NegativeInput, "lemma 1 needs x >= 0, got " + describe(x));
  return xlogx(x) - (x - 1.0);
}

double lemma2_margin(std::span<const double> w, const ProbabilityVector& x) {
  if (w.size() != x.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(w.size()) + " weights vs " +
                                               std::to_string(x.size()) + " probabilities");
  }
  double mean = 0.0;
  double weighted = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(w[i] >= 0.0)) throw Error(ErrorCode::NegativeInput, "w_" + std::to_string(i) + " = " + describe(w[i]));
    mean += x[i] * w[i];
    weighted += x[i] * xlogx(w[i]);
  }
  return weighted - xlogx(mean);
}

ProbabilityVector doubly_stochastic_apply(const ProbabilityVector& w, const DoublyStochasticMatrix& t,
                                          const ToleranceSet& tol) {
  const std::size_t n = w.size();
  if (t.size() != n) {
    throw Error(ErrorCode::DimMismatch, "vector of length " + std::to_string(n) + " vs matrix of order " +
                                            std::to_string(t.size()));
  }
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[j] += w[i] * t(i, j);
  }
  return ProbabilityVector::validate(std::move(out), tol);
}

double lemma3_margin(const ProbabilityVector& w, const DoublyStochasticMatrix& t, const ToleranceSet& tol) {
  const ProbabilityVector image = doubly_stochastic_apply(w, t, tol);
  return sorted_xlogx_sum(w.entries()) - sorted_xlogx_sum(image.entries());
}

double lemma4_margin(const JointDistribution& w) {
  if (w.shape().size() != 2) {
    throw Error(ErrorCode::DimMismatch, "lemma 4 needs a two-axis joint, got " +
                                            std::to_string(w.shape().size()) + " axes");
  }
  const std::vector<double> rows = w.marginal(0);
  const std::vector<double> cols = w.marginal(1);
  // Relative-entropy form of the same difference; it avoids cancellation
  // between three large sums near the product case.
  double margin = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const double joint = w.at(i, j);
      if (joint > 0.0) margin += joint * std::log(joint / (rows[i] * cols[j]));
    }
  }
  return margin;
}

double quantum_subadditivity_margin(const DensityOperator& rho, const Partition& p, const ToleranceSet& tol) {
  if (p.factors() != 2) {
    throw Error(ErrorCode::PartitionNotBipartite,
                "partition has " + std::to_string(p.factors()) + " factors");
  }
  return correlation_information(rho, p, tol);
}

std::vector<std::size_t> random_permutation(std::size_t n, RngStream& rng) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = n; i-- > 1;) std::swap(perm[i], perm[rng.index(i + 1)]);
  return perm;
}

namespace {

// Uniform on the (k-1)-simplex: spacings of k-1 sorted uniforms.
std::vector<double> simplex_point(std::size_t k, RngStream& rng) {
  std::vector<double> cuts(k - 1);
  for (double& c : cuts) c = rng.uniform();
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> out(k);
  double previous = 0.0;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    out[i] = cuts[i] - previous;
    previous = cuts[i];
  }
  out[k - 1] = 1.0 - previous;
  return out;
}

}  // namespace

DoublyStochasticMatrix random_doubly_stochastic(std::size_t n, std::size_t k_terms, RngStream& rng) {
  if (n == 0 || k_terms == 0) {
    throw Error(ErrorCode::ConfigInvalid, "random_doubly_stochastic needs n >= 1 and k_terms >= 1");
  }
  const std::vector<double> weights = simplex_point(k_terms, rng);
  std::vector<double> e(n * n, 0.0);
  for (double c : weights) {
    const std::vector<std::size_t> perm = random_permutation(n, rng);
    for (std::size_t i = 0; i < n; ++i) e[i * n + perm[i]] += c;
  }
  return DoublyStochasticMatrix::validate(n, std::move(e));
}

ProbabilityVector random_probability_vector(std::size_t n, RngStream& rng, double zero_fraction) {
  if (n == 0) throw Error(ErrorCode::NotNormalized, "empty probability vector");
  std::vector<double> e = simplex_point(n, rng);
  if (zero_fraction > 0.0) {
    const std::size_t keep = rng.index(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (i != keep && rng.uniform() < zero_fraction) e[i] = 0.0;
    }
    // A kept entry can itself be zero if its spacing was; fall back to a point mass.
    const double sum = std::accumulate(e.begin(), e.end(), 0.0);
    if (sum <= 0.0) return ProbabilityVector::point(n, keep);
    for (double& x : e) x /= sum;
  }
  return ProbabilityVector::validate(std::move(e));
}

}  // namespace entroflow

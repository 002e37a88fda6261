//
// Copyright 2026 The dphs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef DPHS_DISTRIBUTIONS_H_
#define DPHS_DISTRIBUTIONS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "dphs/dataset.h"
#include "dphs/lazy_table.h"
#include "dphs/random.h"

namespace dphs {

// Absolute tolerance on the total mass of a probability vector.
inline constexpr double kPmfSumTolerance = 1e-9;

// A probability mass function over the finite domain {0, ..., d - 1}.
// Immutable after construction.
class DiscreteDistribution {
 public:
  // Validates that pmf is nonempty, every entry is finite and nonnegative,
  // and the entries sum to 1 within kPmfSumTolerance.
  static absl::StatusOr<DiscreteDistribution> Create(std::vector<double> pmf);

  static DiscreteDistribution PointMass(size_t domain_size, size_t point);
  static DiscreteDistribution Uniform(size_t domain_size);

  size_t domain_size() const { return pmf_.size(); }
  double operator[](size_t x) const { return pmf_[x]; }
  std::span<const double> pmf() const { return pmf_; }

  // Compensated sum of the pmf over the given domain points.
  double Mass(std::span<const size_t> points) const;

  // One draw by inverse CDF. Zero-mass points are never returned.
  uint32_t Draw(Rng& rng) const;

 private:
  explicit DiscreteDistribution(std::vector<double> pmf);

  std::vector<double> pmf_;
  std::vector<double> cdf_;
  size_t last_support_ = 0;
};

// (1/2) * sum_x |p(x) - q(x)|, which equals sup_S |p(S) - q(S)| on a finite
// domain. Errors when the domain sizes differ.
absl::StatusOr<double> TvDistance(const DiscreteDistribution& p,
                                  const DiscreteDistribution& q);

// `count` i.i.d. draws from p.
Dataset Sample(const DiscreteDistribution& p, Rng& rng, size_t count);

// S_{i,j} = {x : H_i(x) < H_j(x)} for i <= j, and S_{j,i} otherwise. Ties are
// excluded.
struct ScheffeSet {
  size_t first = 0;   // canonical pair, first <= second
  size_t second = 0;
  std::vector<size_t> members;  // ascending
};

// Masses of S_{i,j} under H_i and H_j, in argument order.
struct ScheffeMasses {
  double first = 0.0;
  double second = 0.0;
};

// A finite class of hypotheses over a shared domain, with a lazily filled
// cache of Scheffe-set masses. Concurrent reads are safe.
class HypothesisClass {
 public:
  static absl::StatusOr<HypothesisClass> Create(
      std::vector<DiscreteDistribution> hypotheses, bool cache_masses = true);

  size_t size() const { return hypotheses_.size(); }
  size_t domain_size() const { return domain_size_; }
  const DiscreteDistribution& hypothesis(size_t i) const {
    return hypotheses_[i];
  }
  std::span<const DiscreteDistribution> hypotheses() const {
    return hypotheses_;
  }
  bool caching() const { return cache_masses_; }

  absl::StatusOr<ScheffeSet> GetScheffeSet(size_t i, size_t j) const;
  absl::StatusOr<ScheffeMasses> GetScheffeMasses(size_t i, size_t j) const;

  // Unchecked variants for hot loops; indices must be valid.
  bool InScheffeSet(size_t i, size_t j, size_t x) const {
    const size_t lo = i <= j ? i : j;
    const size_t hi = i <= j ? j : i;
    return hypotheses_[lo][x] < hypotheses_[hi][x];
  }
  ScheffeMasses Masses(size_t i, size_t j) const;

 private:
  HypothesisClass(std::vector<DiscreteDistribution> hypotheses,
                  bool cache_masses);

  absl::Status CheckIndices(size_t i, size_t j) const;

  std::vector<DiscreteDistribution> hypotheses_;
  size_t domain_size_ = 0;
  bool cache_masses_ = true;
  // Masses of S_{lo,hi} under H_lo and H_hi, keyed by PairSlot.
  LazyTable lo_mass_;
  LazyTable hi_mass_;
};

}  // namespace dphs

#endif  // DPHS_DISTRIBUTIONS_H_

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

#ifndef DPHS_EMPIRICAL_H_
#define DPHS_EMPIRICAL_H_

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "absl/status/statusor.h"
#include "dphs/dataset.h"
#include "dphs/distributions.h"
#include "dphs/lazy_table.h"

namespace dphs {

// Answers empirical semi-distance queries
//   w_i(H_j) = |H_j(S_{i,j}) - P_hat(S_{i,j})|
// for a fixed hypothesis class and dataset. Both must outlive the oracle.
//
// Every semi-distance query increments query_count(), cached or not, so that
// complexity is measured in units of the Theta(s) queries an uncached
// implementation would pay. Read-only after construction; concurrent queries
// are allowed.
class SemiDistanceOracle {
 public:
  // Errors if the dataset's domain differs from the class's domain.
  static absl::StatusOr<SemiDistanceOracle> Create(
      const HypothesisClass& hypotheses, const Dataset& dataset,
      bool cache = true);

  SemiDistanceOracle(SemiDistanceOracle&&) noexcept = default;
  SemiDistanceOracle& operator=(SemiDistanceOracle&&) noexcept = default;

  const HypothesisClass& hypotheses() const { return *hypotheses_; }
  const Dataset& dataset() const { return *dataset_; }
  size_t sample_count() const { return dataset_->size(); }

  // Fraction of samples inside the set. Errors on an empty dataset.
  absl::StatusOr<double> EmpiricalMass(const ScheffeSet& set) const;

  // Errors on an empty dataset or invalid indices.
  absl::StatusOr<double> EmpiricalSemiDistance(size_t i, size_t j) const;

  // Unchecked, counted query for inner loops. Requires a nonempty dataset
  // and valid indices.
  double SemiDistance(size_t i, size_t j) const;

  // P_hat(S_{i,j}); not counted as a query.
  double ScheffeEmpiricalMass(size_t i, size_t j) const;

  uint64_t query_count() const {
    return queries_->load(std::memory_order_relaxed);
  }
  void ResetQueryCount() const {
    queries_->store(0, std::memory_order_relaxed);
  }

 private:
  SemiDistanceOracle(const HypothesisClass& hypotheses, const Dataset& dataset,
                     bool cache);

  const HypothesisClass* hypotheses_;
  const Dataset* dataset_;
  bool cache_;
  std::vector<uint64_t> histogram_;
  LazyTable empirical_mass_;
  std::unique_ptr<std::atomic<uint64_t>> queries_;
};

// w_i(H_j) = |H_j(S_{i,j}) - P(S_{i,j})| against the true distribution. Audit
// and test use only; never part of the private path.
double TrueSemiDistance(const HypothesisClass& hypotheses,
                        const DiscreteDistribution& p, size_t i, size_t j);

// ceil(log(2n / beta) / (2 gamma^2)): enough samples for every empirical
// semi-distance to be within gamma of the truth with probability 1 - beta.
absl::StatusOr<int64_t> RequiredSamplesForAccuracy(size_t n, double gamma,
                                                   double beta);

}  // namespace dphs

#endif  // DPHS_EMPIRICAL_H_

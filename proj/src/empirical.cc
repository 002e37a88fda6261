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

#include "dphs/empirical.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dphs/summation.h"

namespace dphs {

SemiDistanceOracle::SemiDistanceOracle(const HypothesisClass& hypotheses,
                                       const Dataset& dataset, bool cache)
    : hypotheses_(&hypotheses),
      dataset_(&dataset),
      cache_(cache),
      histogram_(hypotheses.domain_size(), 0),
      empirical_mass_(cache ? PairSlotCount(hypotheses.size()) : 0),
      queries_(std::make_unique<std::atomic<uint64_t>>(0)) {
  for (uint32_t x : dataset.samples()) ++histogram_[x];
}

absl::StatusOr<SemiDistanceOracle> SemiDistanceOracle::Create(
    const HypothesisClass& hypotheses, const Dataset& dataset, bool cache) {
  if (dataset.domain_size() != hypotheses.domain_size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("dataset domain size ", dataset.domain_size(),
                     " differs from hypothesis domain size ",
                     hypotheses.domain_size()));
  }
  return SemiDistanceOracle(hypotheses, dataset, cache);
}

absl::StatusOr<double> SemiDistanceOracle::EmpiricalMass(
    const ScheffeSet& set) const {
  if (dataset_->empty()) {
    return absl::InvalidArgumentError(
        "empirical mass is undefined for an empty dataset");
  }
  uint64_t inside = 0;
  for (size_t x : set.members) {
    if (x >= histogram_.size()) {
      return absl::OutOfRangeError(
          absl::StrCat("set member ", x, " outside domain"));
    }
    inside += histogram_[x];
  }
  return static_cast<double>(inside) / static_cast<double>(dataset_->size());
}

double SemiDistanceOracle::ScheffeEmpiricalMass(size_t i, size_t j) const {
  if (i == j) return 0.0;
  const size_t slot = cache_ ? PairSlot(i, j) : 0;
  if (cache_) {
    if (std::optional<double> v = empirical_mass_.Get(slot)) return *v;
  }
  uint64_t inside = 0;
  for (size_t x = 0; x < histogram_.size(); ++x) {
    if (hypotheses_->InScheffeSet(i, j, x)) inside += histogram_[x];
  }
  const double mass =
      static_cast<double>(inside) / static_cast<double>(dataset_->size());
  if (cache_) empirical_mass_.Put(slot, mass);
  return mass;
}

double SemiDistanceOracle::SemiDistance(size_t i, size_t j) const {
  queries_->fetch_add(1, std::memory_order_relaxed);
  if (i == j) return 0.0;
  const double h_j = hypotheses_->Masses(i, j).second;
  return std::fabs(h_j - ScheffeEmpiricalMass(i, j));
}

absl::StatusOr<double> SemiDistanceOracle::EmpiricalSemiDistance(
    size_t i, size_t j) const {
  if (dataset_->empty()) {
    return absl::InvalidArgumentError(
        "semi-distance is undefined for an empty dataset");
  }
  if (i >= hypotheses_->size() || j >= hypotheses_->size()) {
    return absl::OutOfRangeError(absl::StrCat(
        "hypothesis index pair (", i, ", ", j, ") out of range"));
  }
  return SemiDistance(i, j);
}

double TrueSemiDistance(const HypothesisClass& hypotheses,
                        const DiscreteDistribution& p, size_t i, size_t j) {
  if (i == j) return 0.0;
  CompensatedSum p_mass;
  for (size_t x = 0; x < hypotheses.domain_size(); ++x) {
    if (hypotheses.InScheffeSet(i, j, x)) p_mass.Add(p[x]);
  }
  return std::fabs(hypotheses.Masses(i, j).second - p_mass.Value());
}

absl::StatusOr<int64_t> RequiredSamplesForAccuracy(size_t n, double gamma,
                                                   double beta) {
  if (n == 0) return absl::InvalidArgumentError("n must be positive");
  if (!(gamma > 0.0 && gamma < 1.0)) {
    return absl::InvalidArgumentError("gamma must lie in (0, 1)");
  }
  if (!(beta > 0.0 && beta < 1.0)) {
    return absl::InvalidArgumentError("beta must lie in (0, 1)");
  }
  const double s = std::log(2.0 * static_cast<double>(n) / beta) /
                   (2.0 * gamma * gamma);
  return static_cast<int64_t>(std::ceil(s));
}

}  // namespace dphs

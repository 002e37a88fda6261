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

#include "dphs/distributions.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dphs/summation.h"

namespace dphs {

DiscreteDistribution::DiscreteDistribution(std::vector<double> pmf)
    : pmf_(std::move(pmf)) {
  cdf_.resize(pmf_.size());
  CompensatedSum running;
  for (size_t x = 0; x < pmf_.size(); ++x) {
    running.Add(pmf_[x]);
    cdf_[x] = running.Value();
    if (pmf_[x] > 0.0) last_support_ = x;
  }
}

absl::StatusOr<DiscreteDistribution> DiscreteDistribution::Create(
    std::vector<double> pmf) {
  if (pmf.empty()) {
    return absl::InvalidArgumentError("pmf must have at least one entry");
  }
  CompensatedSum total;
  for (size_t x = 0; x < pmf.size(); ++x) {
    if (!std::isfinite(pmf[x]) || pmf[x] < 0.0) {
      return absl::InvalidArgumentError(
          absl::StrCat("pmf entry ", x, " is ", pmf[x],
                       "; entries must be finite and nonnegative"));
    }
    total.Add(pmf[x]);
  }
  if (std::fabs(total.Value() - 1.0) > kPmfSumTolerance) {
    return absl::InvalidArgumentError(
        absl::StrCat("pmf sums to ", total.Value(), ", expected 1"));
  }
  return DiscreteDistribution(std::move(pmf));
}

DiscreteDistribution DiscreteDistribution::PointMass(size_t domain_size,
                                                     size_t point) {
  std::vector<double> pmf(domain_size, 0.0);
  pmf[point] = 1.0;
  return DiscreteDistribution(std::move(pmf));
}

DiscreteDistribution DiscreteDistribution::Uniform(size_t domain_size) {
  return DiscreteDistribution(
      std::vector<double>(domain_size, 1.0 / static_cast<double>(domain_size)));
}

double DiscreteDistribution::Mass(std::span<const size_t> points) const {
  CompensatedSum sum;
  for (size_t x : points) sum.Add(pmf_[x]);
  return sum.Value();
}

uint32_t DiscreteDistribution::Draw(Rng& rng) const {
  const double u = UniformOpen01(rng) * cdf_.back();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const size_t x = static_cast<size_t>(it - cdf_.begin());
  // u can only land past the end through rounding in the last cdf entry.
  return static_cast<uint32_t>(std::min(x, last_support_));
}

absl::StatusOr<double> TvDistance(const DiscreteDistribution& p,
                                  const DiscreteDistribution& q) {
  if (p.domain_size() != q.domain_size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("domain sizes differ: ", p.domain_size(), " vs ",
                     q.domain_size()));
  }
  CompensatedSum sum;
  for (size_t x = 0; x < p.domain_size(); ++x) {
    sum.Add(std::fabs(p[x] - q[x]));
  }
  return 0.5 * sum.Value();
}

Dataset Sample(const DiscreteDistribution& p, Rng& rng, size_t count) {
  std::vector<uint32_t> samples(count);
  for (auto& s : samples) s = p.Draw(rng);
  return *Dataset::Create(std::move(samples), p.domain_size());
}

HypothesisClass::HypothesisClass(std::vector<DiscreteDistribution> hypotheses,
                                 bool cache_masses)
    : hypotheses_(std::move(hypotheses)),
      domain_size_(hypotheses_.front().domain_size()),
      cache_masses_(cache_masses),
      lo_mass_(cache_masses ? PairSlotCount(hypotheses_.size()) : 0),
      hi_mass_(cache_masses ? PairSlotCount(hypotheses_.size()) : 0) {}

absl::StatusOr<HypothesisClass> HypothesisClass::Create(
    std::vector<DiscreteDistribution> hypotheses, bool cache_masses) {
  if (hypotheses.empty()) {
    return absl::InvalidArgumentError("hypothesis class must be nonempty");
  }
  const size_t d = hypotheses.front().domain_size();
  for (size_t i = 1; i < hypotheses.size(); ++i) {
    if (hypotheses[i].domain_size() != d) {
      return absl::InvalidArgumentError(
          absl::StrCat("hypothesis ", i, " has domain size ",
                       hypotheses[i].domain_size(), ", expected ", d));
    }
  }
  return HypothesisClass(std::move(hypotheses), cache_masses);
}

absl::Status HypothesisClass::CheckIndices(size_t i, size_t j) const {
  if (i >= size() || j >= size()) {
    return absl::OutOfRangeError(absl::StrCat("hypothesis index pair (", i,
                                              ", ", j, ") out of range for ",
                                              size(), " hypotheses"));
  }
  return absl::OkStatus();
}

absl::StatusOr<ScheffeSet> HypothesisClass::GetScheffeSet(size_t i,
                                                          size_t j) const {
  if (absl::Status s = CheckIndices(i, j); !s.ok()) return s;
  ScheffeSet set;
  set.first = std::min(i, j);
  set.second = std::max(i, j);
  if (set.first == set.second) return set;
  const DiscreteDistribution& lo = hypotheses_[set.first];
  const DiscreteDistribution& hi = hypotheses_[set.second];
  for (size_t x = 0; x < domain_size_; ++x) {
    if (lo[x] < hi[x]) set.members.push_back(x);
  }
  return set;
}

absl::StatusOr<ScheffeMasses> HypothesisClass::GetScheffeMasses(
    size_t i, size_t j) const {
  if (absl::Status s = CheckIndices(i, j); !s.ok()) return s;
  return Masses(i, j);
}

ScheffeMasses HypothesisClass::Masses(size_t i, size_t j) const {
  if (i == j) return {};
  const size_t lo = std::min(i, j);
  const size_t hi = std::max(i, j);
  double lo_mass = 0.0;
  double hi_mass = 0.0;
  const size_t slot = cache_masses_ ? PairSlot(lo, hi) : 0;
  std::optional<double> cached_lo =
      cache_masses_ ? lo_mass_.Get(slot) : std::nullopt;
  std::optional<double> cached_hi =
      cache_masses_ ? hi_mass_.Get(slot) : std::nullopt;
  if (cached_lo && cached_hi) {
    lo_mass = *cached_lo;
    hi_mass = *cached_hi;
  } else {
    const DiscreteDistribution& p_lo = hypotheses_[lo];
    const DiscreteDistribution& p_hi = hypotheses_[hi];
    CompensatedSum sum_lo;
    CompensatedSum sum_hi;
    for (size_t x = 0; x < domain_size_; ++x) {
      if (p_lo[x] < p_hi[x]) {
        sum_lo.Add(p_lo[x]);
        sum_hi.Add(p_hi[x]);
      }
    }
    lo_mass = sum_lo.Value();
    hi_mass = sum_hi.Value();
    if (cache_masses_) {
      lo_mass_.Put(slot, lo_mass);
      hi_mass_.Put(slot, hi_mass);
    }
  }
  if (i == lo) return {lo_mass, hi_mass};
  return {hi_mass, lo_mass};
}

}  // namespace dphs

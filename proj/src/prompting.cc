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

#include "dphs/prompting.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dphs/summation.h"

namespace dphs {
namespace {

absl::Status CheckIndex(size_t i, size_t n) {
  if (i >= n) {
    return absl::OutOfRangeError(
        absl::StrCat("hypothesis index ", i, " out of range for ", n));
  }
  return absl::OkStatus();
}

double ScoreUnchecked(size_t candidate, size_t rank,
                      std::span<const size_t> sample_list,
                      const SemiDistanceOracle& oracle,
                      const ProxyState& state, std::vector<double>& lifts) {
  lifts.resize(sample_list.size());
  for (size_t l = 0; l < sample_list.size(); ++l) {
    const size_t j = sample_list[l];
    lifts[l] = oracle.SemiDistance(candidate, j) - state.proxy(j);
  }
  // The rank-th largest; same value a full non-increasing sort would put at
  // that position.
  const auto nth = lifts.begin() + static_cast<std::ptrdiff_t>(rank - 1);
  std::nth_element(lifts.begin(), nth, lifts.end(), std::greater<double>());
  return *nth;
}

}  // namespace

absl::StatusOr<double> LiftValue(const SemiDistanceOracle& oracle,
                                 const ProxyState& state, size_t i, size_t j) {
  const size_t n = oracle.hypotheses().size();
  if (absl::Status s = CheckIndex(i, n); !s.ok()) return s;
  if (absl::Status s = CheckIndex(j, n); !s.ok()) return s;
  absl::StatusOr<double> w = oracle.EmpiricalSemiDistance(i, j);
  if (!w.ok()) return w.status();
  return *w - state.proxy(j);
}

size_t ScoreRank(double eta, size_t k) {
  const double x = eta / 2.0 * static_cast<double>(k);
  // Products that are integers in exact arithmetic but land a few ulps above
  // one must not round up to the next rank.
  const double nearest = std::round(x);
  const double r =
      std::fabs(x - nearest) <= 1e-9 * std::max(1.0, x) ? nearest
                                                        : std::ceil(x);
  return std::clamp<size_t>(static_cast<size_t>(r), 1, std::max<size_t>(k, 1));
}

absl::StatusOr<double> ComputeScore(const ScoreQuery& query,
                                    const SemiDistanceOracle& oracle,
                                    const ProxyState& state) {
  const size_t n = oracle.hypotheses().size();
  if (query.sample_list.empty()) {
    return absl::InvalidArgumentError("score needs a nonempty sample list");
  }
  if (!(query.eta > 0.0 && query.eta <= 1.0)) {
    return absl::InvalidArgumentError("eta must lie in (0, 1]");
  }
  if (oracle.sample_count() == 0) {
    return absl::InvalidArgumentError("score is undefined on an empty dataset");
  }
  if (absl::Status s = CheckIndex(query.candidate, n); !s.ok()) return s;
  for (size_t j : query.sample_list) {
    if (absl::Status s = CheckIndex(j, n); !s.ok()) return s;
  }
  std::vector<double> lifts;
  return ScoreUnchecked(query.candidate,
                        ScoreRank(query.eta, query.sample_list.size()),
                        query.sample_list, oracle, state, lifts);
}

SvtOutcome AboveThreshold(double eps, double delta, double threshold,
                          std::span<const size_t> candidates,
                          const std::function<double(size_t)>& score,
                          Rng& rng) {
  const double eps1 = eps / 2.0;
  const double eps2 = eps - eps1;
  const double noisy_threshold =
      threshold + LaplaceFromUniform(UniformOpen01(rng), delta / eps1);
  SvtOutcome outcome;
  for (size_t i : candidates) {
    const double nu = LaplaceFromUniform(UniformOpen01(rng), 2.0 * delta / eps2);
    ++outcome.candidates_visited;
    if (score(i) + nu >= noisy_threshold) {
      outcome.index = i;
      return outcome;
    }
  }
  return outcome;
}

absl::StatusOr<SvtOutcome> FindPromptingHypothesis(
    const PromptingSearch& search, std::span<const size_t> candidates,
    std::span<const size_t> sample_list, const SemiDistanceOracle& oracle,
    const ProxyState& state, Rng& rng) {
  if (!(search.eps > 0.0) || !(search.delta > 0.0) ||
      !(search.lift_bound > 0.0)) {
    return absl::InvalidArgumentError(
        "eps, delta and lift bound must be positive");
  }
  if (!(search.eta > 0.0 && search.eta <= 1.0)) {
    return absl::InvalidArgumentError("eta must lie in (0, 1]");
  }
  if (candidates.empty()) return SvtOutcome{};
  if (sample_list.empty()) {
    return absl::InvalidArgumentError("score needs a nonempty sample list");
  }
  if (oracle.sample_count() == 0) {
    return absl::InvalidArgumentError("score is undefined on an empty dataset");
  }
  const size_t n = oracle.hypotheses().size();
  for (size_t i : candidates) {
    if (absl::Status s = CheckIndex(i, n); !s.ok()) return s;
  }
  for (size_t j : sample_list) {
    if (absl::Status s = CheckIndex(j, n); !s.ok()) return s;
  }
  const size_t rank = ScoreRank(search.eta, sample_list.size());
  std::vector<double> lifts;
  auto score = [&](size_t i) {
    return ScoreUnchecked(i, rank, sample_list, oracle, state, lifts);
  };
  return AboveThreshold(search.eps, search.delta, 0.75 * search.lift_bound,
                        candidates, score, rng);
}

absl::StatusOr<double> PromptingProbability(const ProxyState& state,
                                            const SemiDistanceOracle& oracle,
                                            const ExpMechDistribution& q,
                                            size_t i, double sigma_prime) {
  const size_t n = oracle.hypotheses().size();
  if (absl::Status s = CheckIndex(i, n); !s.ok()) return s;
  if (q.size() != n || state.size() != n) {
    return absl::InvalidArgumentError(
        "distribution and proxy state must cover the whole class");
  }
  if (oracle.sample_count() == 0) {
    return absl::InvalidArgumentError("empty dataset");
  }
  CompensatedSum mass;
  for (size_t j = 0; j < n; ++j) {
    if (oracle.SemiDistance(i, j) - state.proxy(j) >= sigma_prime) {
      mass.Add(q.weight(j));
    }
  }
  return mass.Value();
}

}  // namespace dphs

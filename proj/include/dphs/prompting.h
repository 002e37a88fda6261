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

#ifndef DPHS_PROMPTING_H_
#define DPHS_PROMPTING_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>

#include "absl/status/statusor.h"
#include "dphs/dp_mech.h"
#include "dphs/empirical.h"
#include "dphs/proxy_state.h"
#include "dphs/random.h"

namespace dphs {

// Inputs of one score evaluation. The sample list is treated as public.
struct ScoreQuery {
  size_t candidate = 0;
  double eta = 1.0;  // in (0, 1]
  std::span<const size_t> sample_list;
};

// Lift value w_i(H_j) - W(H_j). May be negative.
absl::StatusOr<double> LiftValue(const SemiDistanceOracle& oracle,
                                 const ProxyState& state, size_t i, size_t j);

// 1-based rank ceil(eta / 2 * k) of the lift value a score reports. Clamped
// into [1, k].
size_t ScoreRank(double eta, size_t k);

// The ceil(eta/2 * |K|)-th largest lift value the candidate induces on the
// sample list, duplicates counted with multiplicity. Costs |K| oracle queries.
absl::StatusOr<double> ComputeScore(const ScoreQuery& query,
                                    const SemiDistanceOracle& oracle,
                                    const ProxyState& state);

struct SvtOutcome {
  std::optional<size_t> index;  // nullopt means no candidate cleared the bar
  size_t candidates_visited = 0;
};

// AboveThreshold over a stream of candidates with sensitivity-delta scores:
// half the budget perturbs the threshold with Lap(delta / eps1), the other
// half perturbs each score with Lap(2 delta / eps2). Returns the first
// candidate whose noisy score reaches the noisy threshold. Scores are
// evaluated lazily, one per visited candidate, in the given order.
SvtOutcome AboveThreshold(double eps, double delta, double threshold,
                          std::span<const size_t> candidates,
                          const std::function<double(size_t)>& score,
                          Rng& rng);

struct PromptingSearch {
  double eps = 0.0;         // SVT budget
  double delta = 0.0;       // score sensitivity bound
  double lift_bound = 0.0;  // sigma; the SVT threshold is 3 sigma / 4
  double eta = 0.0;         // quantile parameter of the score
};

// Privately finds a candidate whose score clears 3 sigma / 4, or nullopt.
// Errors on nonpositive eps, delta, or lift bound, eta outside (0, 1], or an
// empty sample list when candidates are present.
absl::StatusOr<SvtOutcome> FindPromptingHypothesis(
    const PromptingSearch& search, std::span<const size_t> candidates,
    std::span<const size_t> sample_list, const SemiDistanceOracle& oracle,
    const ProxyState& state, Rng& rng);

// Exact Pr_{H_j ~ Q}[w_i(H_j) - W(H_j) >= sigma_prime]. Non-private; audit
// and test use only.
absl::StatusOr<double> PromptingProbability(const ProxyState& state,
                                            const SemiDistanceOracle& oracle,
                                            const ExpMechDistribution& q,
                                            size_t i, double sigma_prime);

}  // namespace dphs

#endif  // DPHS_PROMPTING_H_

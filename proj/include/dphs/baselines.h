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

#ifndef DPHS_BASELINES_H_
#define DPHS_BASELINES_H_

#include <cstddef>
#include <vector>

#include "absl/status/statusor.h"
#include "dphs/empirical.h"
#include "dphs/random.h"

namespace dphs {

// max_i w_i(H_j) for every j. Costs n^2 oracle queries.
std::vector<double> MaxEmpiricalSemiDistances(const SemiDistanceOracle& oracle);

// Minimum distance estimate: argmin_j max_i w_i(H_j), lowest index on ties.
size_t MdeNonprivate(const SemiDistanceOracle& oracle);

// One exponential-mechanism draw with utility -max_i w_i(H_j) and
// sensitivity 1/s. eps must be positive.
absl::StatusOr<size_t> MdePrivate(const SemiDistanceOracle& oracle, double eps,
                                  Rng& rng);

}  // namespace dphs

#endif  // DPHS_BASELINES_H_

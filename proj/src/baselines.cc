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

#include "dphs/baselines.h"

#include <algorithm>

#include "absl/status/status.h"
#include "dphs/dp_mech.h"

namespace dphs {

std::vector<double> MaxEmpiricalSemiDistances(
    const SemiDistanceOracle& oracle) {
  const size_t n = oracle.hypotheses().size();
  std::vector<double> out(n, 0.0);
  for (size_t j = 0; j < n; ++j) {
    double best = 0.0;
    for (size_t i = 0; i < n; ++i) {
      best = std::max(best, oracle.SemiDistance(i, j));
    }
    out[j] = best;
  }
  return out;
}

size_t MdeNonprivate(const SemiDistanceOracle& oracle) {
  const std::vector<double> w = MaxEmpiricalSemiDistances(oracle);
  return static_cast<size_t>(std::min_element(w.begin(), w.end()) - w.begin());
}

absl::StatusOr<size_t> MdePrivate(const SemiDistanceOracle& oracle, double eps,
                                  Rng& rng) {
  if (!(eps > 0.0)) return absl::InvalidArgumentError("eps must be positive");
  if (oracle.sample_count() == 0) {
    return absl::InvalidArgumentError("empty dataset");
  }
  const std::vector<double> w = MaxEmpiricalSemiDistances(oracle);
  absl::StatusOr<ExpMechDistribution> q = BuildExpMech(
      w, eps, 1.0 / static_cast<double>(oracle.sample_count()));
  if (!q.ok()) return q.status();
  return q->Draw(rng);
}

}  // namespace dphs

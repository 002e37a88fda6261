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

#ifndef DPHS_AUDIT_H_
#define DPHS_AUDIT_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "absl/status/statusor.h"
#include "dphs/dataset.h"
#include "dphs/distributions.h"
#include "dphs/selector.h"
#include "json.hpp"

namespace dphs {

// Slack on <= comparisons against a sensitivity bound, absorbing summation
// rounding.
inline constexpr double kAuditSlack = 1e-12;

// Upper bound on s * d for neighbor enumeration.
inline constexpr size_t kNeighborGuard = 10000;
// Upper bound on d^s for full dataset enumeration.
inline constexpr size_t kDatasetGuard = 1000000;

// All s * (d - 1) single-substitution neighbors, position-major with values
// ascending. OutOfRange when s * d exceeds the guard.
absl::StatusOr<std::vector<Dataset>> EnumerateNeighbors(const Dataset& dataset,
                                                        size_t domain_size);

// All d^s datasets of size s, in base-d counting order with position 0 the
// most significant digit.
absl::StatusOr<std::vector<Dataset>> EnumerateDatasets(size_t s,
                                                       size_t domain_size);

using DatasetStatistic = std::function<absl::StatusOr<double>(const Dataset&)>;
using VectorStatistic =
    std::function<absl::StatusOr<std::vector<double>>(const Dataset&)>;

// max over neighbors D' of |f(D) - f(D')|, the local sensitivity at D.
absl::StatusOr<double> MaxSensitivity(const DatasetStatistic& f,
                                      const Dataset& dataset,
                                      size_t domain_size);

struct OptResult {
  double opt = 0.0;
  size_t index = 0;
};

// min_j tv(H_j, P) and its lowest argmin.
absl::StatusOr<OptResult> ExactOpt(const HypothesisClass& hypotheses,
                                   const DiscreteDistribution& p);

struct SensitivityReport {
  uint64_t pairs = 0;       // ordered neighbor pairs examined
  uint64_t comparisons = 0;  // coordinate comparisons
  uint64_t violations = 0;
  double max_change = 0.0;
};

// Evaluates a vector-valued statistic on every dataset of size s over the
// domain, then compares each coordinate across every neighboring pair
// against the bound. The statistic must return vectors of one fixed length.
absl::StatusOr<SensitivityReport> AuditSensitivityExhaustive(
    size_t s, size_t domain_size, const VectorStatistic& f, double bound);

struct RatioReport {
  uint64_t pairs = 0;
  uint64_t violations = 0;
  double max_log_ratio = 0.0;
};

// Exhaustive DP audit of an exponential mechanism: for every dataset of size
// s and each neighbor, the probability ratio of every outcome must be at
// most exp(eps0) (up to slack in log space). `distances` gives the
// mechanism's input scores on a dataset; sensitivity is 1/s.
absl::StatusOr<RatioReport> AuditExpMechRatio(size_t s, size_t domain_size,
                                              const VectorStatistic& distances,
                                              double eps0, double log_slack);

struct TraceAudit {
  // Rounds whose added hypothesis was (sigma', eta')-prompting w.r.t. the
  // round's Q.
  size_t prompting_rounds = 0;
  size_t added_rounds = 0;       // rounds that added a hypothesis
  bool all_prompting = true;
  size_t z_ratio_violations = 0;  // among prompting rounds
  double max_log_z_ratio = 0.0;   // over prompting rounds; -inf if none
  bool hashes_consistent = true;  // rebuilt proxies match the trace
};

// Replays a trace on its dataset with the exact prompting oracle and checks
// Z^{t+1} / Z^{t} <= 1 - eta'/2 on each prompting round.
absl::StatusOr<TraceAudit> AuditTrace(const HypothesisClass& hypotheses,
                                      const Dataset& dataset,
                                      const SelectionParams& params,
                                      const SelectionTrace& trace);

struct InstanceAuditConfig {
  size_t s = 3;          // dataset size for exhaustive enumeration
  size_t lists = 16;     // random sample lists per list length
  size_t max_list = 4;   // longest sample list
  std::vector<double> etas = {0.25, 0.5, 1.0};
  double eps0 = 1.0;     // exponential-mechanism parameter for ratio audits
  uint64_t seed = 0;     // draws the sample lists
};

struct InstanceAuditReport {
  SensitivityReport semi_distance;  // bound 1/s
  SensitivityReport proxy;          // bound 1/s
  SensitivityReport score;          // bound 2/s
  RatioReport proxy_mechanism;      // bound eps0
  RatioReport mde_mechanism;        // bound eps0
  bool passed() const;
  nlohmann::json ToJson() const;
};

// Exhaustive neighbor audits of one class over every dataset of size s:
// semi-distances for all pairs, proxies for every prompting set (prefix sets
// once n > 10), scores for seeded random sample lists, and exp-mech ratios
// for proxy and maximum-semi-distance utilities.
absl::StatusOr<InstanceAuditReport> AuditInstance(
    const HypothesisClass& hypotheses, const InstanceAuditConfig& config);

}  // namespace dphs

#endif  // DPHS_AUDIT_H_

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

#ifndef DPHS_SELECTOR_H_
#define DPHS_SELECTOR_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dphs/dataset.h"
#include "dphs/distributions.h"
#include "dphs/dp_mech.h"
#include "dphs/random.h"
#include "json.hpp"

namespace dphs {

// Numerator constants of the sample size, round count and list size formulas.
inline constexpr double kSampleConstant = 32.0 * 96.0 * 33.0 * 16.0;
inline constexpr double kRoundConstant = 33.0 * 16.0;
inline constexpr double kListConstant = 96.0;

// kPaper keeps the full constants; kDesk divides them by DeskFactors.
enum class ConstantPreset { kPaper, kDesk };

// DESK divides the three numerator constants by these factors.
struct DeskFactors {
  double c_s = 1.0;
  double c_t = 1.0;
  double c_k = 1.0;
};

struct SelectionParams {
  double alpha = 0.0;  // additive error
  double beta = 0.0;   // failure probability
  double eps = 0.0;    // privacy
  size_t n = 0;
  ConstantPreset preset = ConstantPreset::kPaper;
  DeskFactors desk;

  int64_t s = 0;  // samples
  int64_t rounds = 0;
  int64_t k = 0;  // sample-list size per round

  double gamma = 0.0;        // semi-distance accuracy, alpha / 4
  double sigma = 0.0;        // lift bound, alpha / 4
  double sigma_prime = 0.0;  // sigma / 2
  double eta = 0.0;          // beta / 4
  double eta_prime = 0.0;    // eta / 4
  PrivacyBudget budget;

  // Sensitivity of proxies and semi-distances, 1/s.
  double mech_sensitivity() const { return 1.0 / static_cast<double>(s); }
  // Sensitivity of scores, 2/s.
  double score_sensitivity() const { return 2.0 / static_cast<double>(s); }
};

struct ConstraintCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
};

// The six conditions the accuracy analysis assumes, evaluated numerically:
//   1. s >= log(12n/beta) / (2 gamma^2)
//   2. k >= 12 log(6nT/beta) / eta
//   3. s >= 64 log(12nT/beta) / (sigma eps_svt)
//   4. alpha >= (8 / (s eps_exp)) log(4n/beta)
//   5. exp(-eps_exp sigma' s / 2) < 1/2
//   6. T >= min(n, (log n + eps_exp s / 2) / log(1 + eta'/2))
// Condition 6 takes OPT at its upper bound 1, and is met by T = n since the
// loop cannot add more than n hypotheses.
std::vector<ConstraintCheck> EvaluateConstraints(const SelectionParams& params);

// FailedPrecondition naming the first violated condition.
absl::Status CheckConstraints(const SelectionParams& params);

// Fills every derived field from (alpha, beta, eps, n) and the preset, then
// checks the six conditions. alpha and beta must lie in (0, 1), eps must be
// positive, n >= 1. Invalid inputs give InvalidArgument; violated conditions
// give FailedPrecondition.
absl::StatusOr<SelectionParams> DeriveParams(double alpha, double beta,
                                             double eps, size_t n,
                                             ConstantPreset preset,
                                             DeskFactors desk = {});

// Same, with s, T and k given directly (T <= n).
absl::StatusOr<SelectionParams> ParamsWithCounts(double alpha, double beta,
                                                 double eps, size_t n,
                                                 int64_t s, int64_t rounds,
                                                 int64_t k);

// Round bound
//   min(n, (log n + eps_exp / (2 Delta) * opt) / log(1 + eta'/2)),
// Delta = 1/s.
double RoundBound(const SelectionParams& params, double opt);

struct RoundRecord {
  std::optional<size_t> chosen;  // nullopt ends the loop
  uint64_t proxy_hash = 0;       // proxies the round's Q was built from
  double log_z = 0.0;            // log normalizer of that Q
  size_t candidates_visited = 0;
  std::vector<double> proxies;
  std::vector<size_t> sample_list;
};

struct SelectionTrace {
  int64_t rounds_executed = 0;
  std::vector<RoundRecord> rounds;
  size_t output_index = 0;
  bool halted_early = false;     // loop ended by a failed search
  double final_log_z = 0.0;      // log normalizer of the output draw's Q
  uint64_t final_proxy_hash = 0;
  std::vector<size_t> prompting_set;
  uint64_t semidistance_queries = 0;

  // Compact form: per-round proxy vectors and sample lists are omitted.
  nlohmann::json ToJson() const;
};

struct SelectionResult {
  size_t index = 0;
  SelectionTrace trace;
};

// Draws params.s samples from p, then runs the selection loop.
absl::StatusOr<SelectionResult> SelectHypothesis(
    const HypothesisClass& hypotheses, const DiscreteDistribution& p,
    const SelectionParams& params, Rng& rng);

// The selection loop on a given dataset. Sensitivities are taken from the
// actual dataset size, which equals params.s in normal use; a different size
// is accepted so that audits can run on small datasets.
absl::StatusOr<SelectionResult> SelectHypothesisOnDataset(
    const HypothesisClass& hypotheses, const Dataset& dataset,
    const SelectionParams& params, Rng& rng);

}  // namespace dphs

#endif  // DPHS_SELECTOR_H_

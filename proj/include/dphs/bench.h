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

#ifndef DPHS_BENCH_H_
#define DPHS_BENCH_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dphs/instance.h"
#include "dphs/selector.h"
#include "json.hpp"

namespace dphs {

enum class GeneratorModel { kDirichletRandom, kPlantedNearHypothesis, kGridCover };

absl::StatusOr<GeneratorModel> ParseGeneratorModel(const std::string& name);
std::string GeneratorModelName(GeneratorModel model);

struct GeneratorConfig {
  GeneratorModel model = GeneratorModel::kDirichletRandom;
  size_t n = 10;
  size_t d = 20;
  double opt_target = 0.0;     // planted model only
  double concentration = 1.0;  // symmetric Dirichlet parameter
  uint64_t seed = 0;
};

// Builds a random instance.
//   dirichlet-random: hypotheses and P drawn i.i.d. from Dirichlet.
//   planted-near-hypothesis: Dirichlet hypotheses; P mixes a random H_m with
//     the uniform distribution at the weight putting tv(P, H_m) at the
//     target, redrawn until the exact OPT lies in [0.5, 1.5] * target.
//   grid-cover: Binomial(d - 1, p) hypotheses on an evenly spaced grid of p,
//     P a binomial with uniformly random p.
absl::StatusOr<Instance> GenerateInstance(const GeneratorConfig& config);

enum class Algorithm { kPrivateFast, kPrivateMde, kNonprivateMde };

absl::StatusOr<Algorithm> ParseAlgorithm(const std::string& name);
std::string AlgorithmName(Algorithm algo);

struct Counts {
  int64_t s = 0;
  int64_t rounds = 0;
  int64_t k = 0;
};

struct ExperimentConfig {
  Algorithm algo = Algorithm::kPrivateFast;
  double alpha = 0.25;
  double beta = 0.25;
  double eps = 1.0;
  ConstantPreset preset = ConstantPreset::kDesk;
  DeskFactors desk;
  // Overrides the derived s, T, k of the fast selector. For the baselines
  // only s is used.
  std::optional<Counts> counts;
  size_t trials = 0;
  uint64_t seed = 0;
  size_t threads = 1;
};

// Sample size used by each algorithm when no override is given. The fast
// selector's comes from its derived parameters; the private MDE uses
//   max(ceil(log(4n/beta) / (2 gamma^2)), ceil(8 / (alpha eps) log(2n/beta)))
// and the non-private MDE ceil(log(2n/beta) / (2 gamma^2)), gamma = alpha/4.
absl::StatusOr<int64_t> BaselineSampleSize(Algorithm algo, double alpha,
                                           double beta, double eps, size_t n);

struct TrialRow {
  size_t trial = 0;
  uint64_t seed = 0;
  size_t output_index = 0;
  double tv = 0.0;
  bool far = false;  // tv > 3 OPT + alpha
  int64_t rounds = 0;
  uint64_t queries = 0;
  double eps_spent = 0.0;
  double wall_ms = 0.0;
};

struct BinomialInterval {
  double estimate = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

// Wilson score interval at z standard deviations.
BinomialInterval WilsonInterval(size_t successes, size_t trials,
                                double z = 1.96);

struct ExperimentReport {
  Algorithm algo = Algorithm::kPrivateFast;
  size_t n = 0;
  int64_t s = 0;
  double opt = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double eps = 0.0;
  uint64_t seed = 0;
  std::optional<SelectionParams> params;  // fast selector only
  std::vector<TrialRow> rows;             // in trial order

  size_t far_count() const;
  BinomialInterval far_rate() const { return WilsonInterval(far_count(), rows.size()); }
  double mean_queries() const;
  double mean_rounds() const;
  double mean_wall_ms() const;

  // Column order: trial,seed,algo,output_index,tv,far,rounds,queries,
  // eps_spent,wall_ms. Aggregates follow as '#' comment lines when there is
  // at least one row.
  std::string ToCsv(bool include_timing = true) const;
  nlohmann::json ToJson(bool include_timing = true) const;
};

// Runs independent trials on one instance. Trial t uses the generator seeded
// with DeriveSeed(config.seed, t), so rows do not depend on the thread count.
absl::StatusOr<ExperimentReport> RunExperiment(const Instance& instance,
                                               const ExperimentConfig& config);

struct ScalingConfig {
  GeneratorConfig family;  // n is overridden per point
  std::vector<size_t> ns;
  double alpha = 0.5;
  double beta = 0.5;
  double eps = 50.0;
  ConstantPreset preset = ConstantPreset::kDesk;
  DeskFactors desk;
  size_t trials = 3;
  uint64_t seed = 0;
  size_t threads = 1;
};

struct ScalingPoint {
  size_t n = 0;
  double fast_queries = 0.0;
  double mde_queries = 0.0;
  double fast_wall_ms = 0.0;
  double mde_wall_ms = 0.0;
  double fast_rounds = 0.0;
};

struct ScalingReport {
  Counts counts;  // s and k shared by every point; T = min(T, n)
  std::vector<ScalingPoint> points;
  double fast_slope = 0.0;  // log-log least squares, query counts
  double mde_slope = 0.0;
  nlohmann::json ToJson(bool include_timing = true) const;
};

// Least-squares slope of log y against log x.
absl::StatusOr<double> LogLogSlope(const std::vector<double>& x,
                                   const std::vector<double>& y);

// Query-count scaling of the fast selector against the private MDE. s, T and
// k are derived once at the largest n, then reused at every n with T capped
// at n; every point re-validates the parameter constraints.
absl::StatusOr<ScalingReport> ScalingBenchmark(const ScalingConfig& config);

}  // namespace dphs

#endif  // DPHS_BENCH_H_

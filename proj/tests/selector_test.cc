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

#include "dphs/selector.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dphs/empirical.h"
#include "dphs/proxy_state.h"
#include "gtest/gtest.h"

namespace dphs {
namespace {

// Hypotheses with 0.6 mass on their own point and the rest spread evenly;
// pairwise tv is 0.6 - 0.4/(d-1) >= 0.4 for d >= 3.
HypothesisClass Separated(size_t n, size_t d) {
  std::vector<DiscreteDistribution> hs;
  for (size_t i = 0; i < n; ++i) {
    std::vector<double> p(d, 0.4 / static_cast<double>(d - 1));
    p[i] = 0.6;
    hs.push_back(*DiscreteDistribution::Create(p));
  }
  return *HypothesisClass::Create(std::move(hs));
}

TEST(DeriveParamsTest, FullConstantsSingleHypothesis) {
  SelectionParams p =
      *DeriveParams(0.5, 0.5, 0.5, 1, ConstantPreset::kPaper);
  const double l = std::log(12.0);
  EXPECT_EQ(p.s, static_cast<int64_t>(
                     std::ceil(1622016.0 / (0.25 * 0.25 * 0.5) * l * l * l)));
  EXPECT_EQ(p.rounds, 1);
  EXPECT_EQ(p.k, static_cast<int64_t>(std::ceil(96.0 / 0.5 * l)));
  EXPECT_EQ(kSampleConstant, 1622016.0);
  EXPECT_DOUBLE_EQ(p.gamma, 0.125);
  EXPECT_DOUBLE_EQ(p.sigma, 0.125);
  EXPECT_DOUBLE_EQ(p.sigma_prime, 0.0625);
  EXPECT_DOUBLE_EQ(p.eta, 0.125);
  EXPECT_DOUBLE_EQ(p.eta_prime, 0.03125);
  EXPECT_DOUBLE_EQ(p.budget.eps_exp, 0.5 / (2.0 * (p.k * p.rounds + 1)));
  EXPECT_DOUBLE_EQ(p.budget.eps_svt, 0.25);
  EXPECT_DOUBLE_EQ(p.score_sensitivity(), 2.0 / p.s);
}

TEST(DeriveParamsTest, FullConstantsMonotoneInN) {
  SelectionParams prev = *DeriveParams(0.5, 0.5, 0.5, 1, ConstantPreset::kPaper);
  for (size_t n = 2; n <= 4096; n *= 2) {
    absl::StatusOr<SelectionParams> p =
        DeriveParams(0.5, 0.5, 0.5, n, ConstantPreset::kPaper);
    ASSERT_TRUE(p.ok()) << p.status();
    EXPECT_GE(p->s, prev.s);
    EXPECT_GE(p->rounds, prev.rounds);
    EXPECT_GE(p->k, prev.k);
    EXPECT_LE(p->rounds, static_cast<int64_t>(n));
    prev = *p;
  }
}

TEST(DeriveParamsTest, InvalidInputs) {
  for (double bad : {0.0, 1.0, -0.1, 1.5}) {
    EXPECT_EQ(DeriveParams(bad, 0.5, 0.5, 4, ConstantPreset::kPaper).status().code(),
              absl::StatusCode::kInvalidArgument);
    EXPECT_EQ(DeriveParams(0.5, bad, 0.5, 4, ConstantPreset::kPaper).status().code(),
              absl::StatusCode::kInvalidArgument);
  }
  EXPECT_EQ(DeriveParams(0.5, 0.5, 0.0, 4, ConstantPreset::kPaper).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(DeriveParams(0.5, 0.5, 0.5, 0, ConstantPreset::kPaper).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(DeriveParams(0.5, 0.5, 0.5, 4, ConstantPreset::kDesk, {0, 1, 1})
                .status()
                .code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(DeriveParamsTest, DeskThatBreaksTheExponentialBoundIsRejected) {
  // Shrinking s by 10^7 leaves exp(-eps_exp sigma' s / 2) above 1/2; the
  // alpha condition fails with it and is the one reported.
  absl::StatusOr<SelectionParams> p =
      DeriveParams(0.5, 0.5, 0.5, 4, ConstantPreset::kDesk, {1e7, 1, 1});
  EXPECT_EQ(p.status().code(), absl::StatusCode::kFailedPrecondition);
  EXPECT_NE(p.status().message().find("violated"), absl::string_view::npos);

  // Inspect the same counts without the check.
  SelectionParams raw = *DeriveParams(0.5, 0.5, 0.5, 4, ConstantPreset::kPaper);
  raw.s = std::max<int64_t>(1, raw.s / 10000000);
  std::vector<ConstraintCheck> checks = EvaluateConstraints(raw);
  ASSERT_EQ(checks.size(), 6u);
  EXPECT_FALSE(checks[4].satisfied);
  EXPECT_GE(checks[4].lhs, 0.5);
}

TEST(DeriveParamsTest, FeasibleDeskPreset) {
  absl::StatusOr<SelectionParams> p =
      DeriveParams(0.25, 0.25, 10.0, 20, ConstantPreset::kDesk, {5500, 1, 1.3});
  ASSERT_TRUE(p.ok()) << p.status();
  EXPECT_EQ(p->rounds, 20);
  for (const ConstraintCheck& c : EvaluateConstraints(*p)) {
    EXPECT_TRUE(c.satisfied) << c.name;
  }
}

TEST(ParamsWithCountsTest, ValidatesCounts) {
  EXPECT_FALSE(ParamsWithCounts(0.5, 0.5, 1.0, 4, 100, 5, 10).ok());  // T > n
  EXPECT_FALSE(ParamsWithCounts(0.5, 0.5, 1.0, 4, 0, 1, 10).ok());
  EXPECT_EQ(ParamsWithCounts(0.5, 0.5, 1.0, 4, 100, 4, 10).status().code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(RoundBoundTest, Examples) {
  SelectionParams p = *DeriveParams(0.5, 0.5, 0.5, 64, ConstantPreset::kPaper);
  const double zero = RoundBound(p, 0.0);
  EXPECT_DOUBLE_EQ(zero, std::min(64.0, std::log(64.0) / std::log1p(p.eta_prime / 2)));
  double last = zero;
  for (double opt : {0.01, 0.1, 0.5, 1.0}) {
    const double b = RoundBound(p, opt);
    EXPECT_GE(b, last);
    EXPECT_LE(b, 64.0);
    last = b;
  }
  SelectionParams one = *DeriveParams(0.5, 0.5, 0.5, 1, ConstantPreset::kPaper);
  EXPECT_GE(RoundBound(one, 0.0), 0.0);
  EXPECT_LE(RoundBound(one, 1.0), 1.0);
}

TEST(SelectHypothesisTest, SingleHypothesis) {
  std::vector<DiscreteDistribution> hs = {DiscreteDistribution::Uniform(3)};
  HypothesisClass cls = *HypothesisClass::Create(std::move(hs));
  SelectionParams p = *ParamsWithCounts(0.5, 0.5, 50.0, 1, 20000, 1, 300);
  Rng rng(1);
  SelectionResult r =
      *SelectHypothesis(cls, DiscreteDistribution::Uniform(3), p, rng);
  EXPECT_EQ(r.index, 0u);
  EXPECT_EQ(r.trace.rounds_executed, 1);
  EXPECT_LE(r.trace.prompting_set.size(), 1u);
}

TEST(SelectHypothesisTest, RejectsMismatchedParams) {
  HypothesisClass cls = Separated(3, 5);
  SelectionParams p = *ParamsWithCounts(0.5, 0.5, 50.0, 1, 20000, 1, 300);
  Rng rng(1);
  EXPECT_FALSE(SelectHypothesis(cls, cls.hypothesis(0), p, rng).ok());
}

SelectionParams PlantedParams() {
  absl::StatusOr<SelectionParams> p =
      DeriveParams(0.1, 0.2, 5.0, 5, ConstantPreset::kDesk, {75000, 1, 1.4});
  EXPECT_TRUE(p.ok()) << p.status();
  return *p;
}

TEST(SelectHypothesisTest, TraceInvariantsAndDeterminism) {
  HypothesisClass cls = Separated(5, 10);
  const SelectionParams p = PlantedParams();
  for (uint64_t seed : {1, 2, 3}) {
    Rng a(seed), b(seed);
    SelectionResult r1 = *SelectHypothesis(cls, cls.hypothesis(2), p, a);
    SelectionResult r2 = *SelectHypothesis(cls, cls.hypothesis(2), p, b);
    EXPECT_EQ(r1.trace.ToJson(), r2.trace.ToJson());
    EXPECT_EQ(r1.index, r2.index);

    const SelectionTrace& t = r1.trace;
    EXPECT_LE(t.rounds_executed, p.rounds);
    EXPECT_EQ(static_cast<size_t>(t.rounds_executed), t.rounds.size());
    for (size_t i = 0; i + 1 < t.rounds.size(); ++i) {
      EXPECT_TRUE(t.rounds[i].chosen.has_value());
    }
    EXPECT_EQ(t.halted_early, !t.rounds.empty() && !t.rounds.back().chosen);
    EXPECT_LE(p.budget.Spent(t.rounds_executed), p.eps * (1 + 1e-12));
    EXPECT_EQ(static_cast<int64_t>(t.rounds[0].sample_list.size()), p.k);
    // Proxies never decrease round over round.
    for (size_t i = 1; i < t.rounds.size(); ++i) {
      for (size_t j = 0; j < cls.size(); ++j) {
        EXPECT_GE(t.rounds[i].proxies[j], t.rounds[i - 1].proxies[j]);
      }
    }
  }
}

TEST(SelectHypothesisTest, ProxiesStayBelowTrueMaxPlusGamma) {
  HypothesisClass cls = Separated(5, 10);
  const SelectionParams p = PlantedParams();
  std::vector<double> b(10, 0.05);
  b[0] = 0.35;
  b[1] = 0.25;
  DiscreteDistribution truth = *DiscreteDistribution::Create(b);
  Rng rng(17);
  Dataset data = Sample(truth, rng, static_cast<size_t>(p.s));
  SemiDistanceOracle oracle = *SemiDistanceOracle::Create(cls, data);
  bool accurate = true;
  for (size_t i = 0; i < 5; ++i) {
    for (size_t j = 0; j < 5; ++j) {
      accurate &= std::fabs(oracle.SemiDistance(i, j) -
                            TrueSemiDistance(cls, truth, i, j)) <= p.gamma;
    }
  }
  ASSERT_TRUE(accurate);
  SelectionResult r = *SelectHypothesisOnDataset(cls, data, p, rng);
  ProxyState final_state =
      *ProxyState::FromPromptingSet(r.trace.prompting_set, oracle);
  for (size_t j = 0; j < 5; ++j) {
    double true_max = 0.0;
    for (size_t i = 0; i < 5; ++i) {
      true_max = std::max(true_max, TrueSemiDistance(cls, truth, i, j));
    }
    EXPECT_LE(final_state.proxy(j), true_max + p.gamma);
  }
  EXPECT_EQ(final_state.Hash(), r.trace.final_proxy_hash);
}

TEST(SelectHypothesisTest, RecoversPlantedHypothesis) {
  const size_t n = 5, m = 3, trials = 200;
  HypothesisClass cls = Separated(n, 10);
  const SelectionParams p = PlantedParams();
  size_t hits = 0;
  for (uint64_t t = 0; t < trials; ++t) {
    Rng rng(DeriveSeed(123, t));
    hits += SelectHypothesis(cls, cls.hypothesis(m), p, rng)->index == m;
  }
  const double beta = p.beta;
  const double sd = std::sqrt(beta * (1 - beta) / trials);
  EXPECT_GE(hits / double(trials), 1.0 - beta - 3 * sd);
}

}  // namespace
}  // namespace dphs

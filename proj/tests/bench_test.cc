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

#include "dphs/bench.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "dphs/audit.h"
#include "gtest/gtest.h"

namespace dphs {
namespace {

std::string Slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(GenerateInstanceTest, PlantedWithZeroTargetCopiesAHypothesis) {
  GeneratorConfig c{GeneratorModel::kPlantedNearHypothesis, 10, 15, 0.0, 1.0, 4};
  Instance inst = *GenerateInstance(c);
  EXPECT_EQ(ExactOpt(inst.hypotheses, inst.true_distribution)->opt, 0.0);
}

TEST(GenerateInstanceTest, PlantedHitsTheTargetBand) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    GeneratorConfig c{GeneratorModel::kPlantedNearHypothesis, 20, 50, 0.05, 1.0, seed};
    Instance inst = *GenerateInstance(c);
    const double opt = ExactOpt(inst.hypotheses, inst.true_distribution)->opt;
    EXPECT_GE(opt, 0.025);
    EXPECT_LE(opt, 0.075);
  }
}

TEST(GenerateInstanceTest, FileRoundTripAndDeterminism) {
  const auto dir = std::filesystem::temp_directory_path();
  const std::string a = (dir / "dphs_gen_a.json").string();
  const std::string b = (dir / "dphs_gen_b.json").string();
  GeneratorConfig c{GeneratorModel::kDirichletRandom, 20, 50, 0.0, 1.0, 99};
  ASSERT_TRUE(SaveInstance(*GenerateInstance(c), a).ok());
  ASSERT_TRUE(SaveInstance(*GenerateInstance(c), b).ok());
  EXPECT_EQ(Slurp(a), Slurp(b));
  absl::StatusOr<Instance> back = LoadInstance(a);
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(back->hypotheses.size(), 20u);
  EXPECT_EQ(back->hypotheses.domain_size(), 50u);
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST(GenerateInstanceTest, GridCoverAndValidation) {
  GeneratorConfig c{GeneratorModel::kGridCover, 8, 12, 0.0, 1.0, 1};
  Instance inst = *GenerateInstance(c);
  EXPECT_EQ(inst.hypotheses.size(), 8u);
  c.d = 1;
  EXPECT_FALSE(GenerateInstance(c).ok());
  c = {GeneratorModel::kDirichletRandom, 0, 5, 0.0, 1.0, 1};
  EXPECT_FALSE(GenerateInstance(c).ok());
  c = {GeneratorModel::kPlantedNearHypothesis, 3, 5, 1.5, 1.0, 1};
  EXPECT_FALSE(GenerateInstance(c).ok());
  EXPECT_FALSE(ParseGeneratorModel("gaussian").ok());
}

Instance Planted(double opt, size_t n = 10, uint64_t seed = 1) {
  return *GenerateInstance(
      {GeneratorModel::kPlantedNearHypothesis, n, 20, opt, 1.0, seed});
}

TEST(RunExperimentTest, ZeroTrialsIsHeaderOnly) {
  ExperimentConfig c;
  c.algo = Algorithm::kNonprivateMde;
  ExperimentReport r = *RunExperiment(Planted(0.0), c);
  EXPECT_EQ(r.ToCsv(),
            "trial,seed,algo,output_index,tv,far,rounds,queries,eps_spent,"
            "wall_ms\n");
  EXPECT_TRUE(r.ToJson()["trials"].empty());
}

TEST(RunExperimentTest, NonprivateMdeOnExactPlant) {
  ExperimentConfig c;
  c.algo = Algorithm::kNonprivateMde;
  c.alpha = 0.2;
  c.beta = 0.1;
  c.trials = 200;
  c.seed = 5;
  Instance inst = Planted(0.0);
  ExperimentReport r = *RunExperiment(inst, c);
  EXPECT_EQ(r.s, *RequiredSamplesForAccuracy(10, 0.05, 0.1));
  const double sd = std::sqrt(0.1 * 0.9 / 200);
  EXPECT_LE(r.far_rate().estimate, 0.1 + 3 * sd);
  for (const TrialRow& row : r.rows) EXPECT_EQ(row.queries, 100u);
}

TEST(RunExperimentTest, RowsReproduceFromIndexAndDoNotDependOnThreads) {
  Instance inst = Planted(0.05, 10, 3);
  ExperimentConfig c;
  c.algo = Algorithm::kPrivateMde;
  c.eps = 2.0;
  c.trials = 16;
  c.seed = 11;
  c.threads = 1;
  ExperimentReport one = *RunExperiment(inst, c);
  c.threads = 4;
  ExperimentReport four = *RunExperiment(inst, c);
  EXPECT_EQ(one.ToCsv(false), four.ToCsv(false));
  EXPECT_EQ(one.ToJson(false), four.ToJson(false));
  for (const TrialRow& row : one.rows) {
    EXPECT_EQ(row.tv, *TvDistance(inst.hypotheses.hypothesis(row.output_index),
                                  inst.true_distribution));
    EXPECT_EQ(row.far, row.tv > 3 * one.opt + c.alpha);
    EXPECT_EQ(row.eps_spent, 2.0);
  }
}

TEST(RunExperimentTest, FastQueryCountWithinRoundBudget) {
  Instance inst = Planted(0.05, 20, 2);
  ExperimentConfig c;
  c.algo = Algorithm::kPrivateFast;
  c.alpha = 0.25;
  c.beta = 0.25;
  c.eps = 10.0;
  c.desk = {5500, 1, 1.3};
  c.trials = 4;
  ExperimentReport r = *RunExperiment(inst, c);
  ASSERT_TRUE(r.params.has_value());
  const double bound =
      2.0 * r.params->rounds * r.params->k * static_cast<double>(r.n);
  for (const TrialRow& row : r.rows) {
    EXPECT_LE(static_cast<double>(row.queries), bound);
    EXPECT_LE(row.rounds, r.params->rounds);
    EXPECT_LE(row.eps_spent, c.eps * (1 + 1e-12));
  }
}

TEST(RunExperimentTest, ConstraintViolationSurfaces) {
  ExperimentConfig c;
  c.algo = Algorithm::kPrivateFast;
  c.desk = {1e9, 1, 1};
  c.trials = 1;
  EXPECT_EQ(RunExperiment(Planted(0.0), c).status().code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(WilsonIntervalTest, CoversEstimate) {
  BinomialInterval ci = WilsonInterval(10, 100);
  EXPECT_DOUBLE_EQ(ci.estimate, 0.1);
  EXPECT_LT(ci.lower, 0.1);
  EXPECT_GT(ci.upper, 0.1);
  EXPECT_EQ(WilsonInterval(0, 10).lower, 0.0);
  EXPECT_EQ(WilsonInterval(10, 10).upper, 1.0);
}

TEST(LogLogSlopeTest, RecoversPowerLaws) {
  std::vector<double> x = {50, 100, 200, 400};
  std::vector<double> y2, y1;
  for (double v : x) {
    y2.push_back(3 * v * v);
    y1.push_back(7 * v);
  }
  EXPECT_NEAR(*LogLogSlope(x, y2), 2.0, 1e-12);
  EXPECT_NEAR(*LogLogSlope(x, y1), 1.0, 1e-12);
  EXPECT_FALSE(LogLogSlope({1.0}, {1.0}).ok());
  EXPECT_FALSE(LogLogSlope({1.0, 1.0}, {1.0, 2.0}).ok());
}

TEST(ScalingBenchmarkTest, NeedsThreePoints) {
  ScalingConfig c;
  c.ns = {10, 20};
  EXPECT_FALSE(ScalingBenchmark(c).ok());
}

}  // namespace
}  // namespace dphs

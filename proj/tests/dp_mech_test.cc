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

#include "dphs/dp_mech.h"

#include <cmath>
#include <vector>

#include "dphs/proxy_state.h"
#include "gtest/gtest.h"

namespace dphs {
namespace {

TEST(PrivacyBudgetTest, SplitAndLedgerIdentity) {
  for (double eps : {0.1, 1.0, 10.0}) {
    for (int64_t k : {1, 7, 1824}) {
      for (int64_t t : {1, 5, 20, 400}) {
        PrivacyBudget b = *PrivacyBudget::Create(eps, k, t);
        EXPECT_DOUBLE_EQ(b.eps_exp, eps / (2.0 * (k * t + 1)));
        EXPECT_DOUBLE_EQ(b.eps_svt, eps / (2.0 * t));
        EXPECT_NEAR(b.Spent(t), eps, 1e-12 * eps);
        EXPECT_LE(b.Spent(1), eps);
      }
    }
  }
  EXPECT_FALSE(PrivacyBudget::Create(0.0, 1, 1).ok());
  EXPECT_FALSE(PrivacyBudget::Create(1.0, 0, 1).ok());
  EXPECT_FALSE(PrivacyBudget::Create(1.0, 1, 0).ok());
}

TEST(LaplaceTest, MedianAndSymmetry) {
  EXPECT_EQ(LaplaceFromUniform(0.5, 3.0), 0.0);
  EXPECT_DOUBLE_EQ(LaplaceFromUniform(0.25, 2.0), -LaplaceFromUniform(0.75, 2.0));
  // CDF at x > 0 is 1 - exp(-x/b)/2.
  const double x = LaplaceFromUniform(0.9, 1.5);
  EXPECT_NEAR(1.0 - 0.5 * std::exp(-x / 1.5), 0.9, 1e-12);
}

TEST(LaplaceTest, RejectsBadScale) {
  Rng rng(1);
  EXPECT_FALSE(Laplace(rng, 0.0).ok());
  EXPECT_FALSE(Laplace(rng, -1.0).ok());
}

TEST(LaplaceTest, MeanAndTail) {
  Rng rng(77);
  double sum = 0.0;
  const int draws = 1000000;
  for (int i = 0; i < draws; ++i) sum += *Laplace(rng, 1.0);
  EXPECT_NEAR(sum / draws, 0.0, 0.01);

  const double beta = 0.1, scale = 2.0;
  int over = 0;
  for (int i = 0; i < 100000; ++i) {
    over += std::fabs(*Laplace(rng, scale)) > scale * std::log(2.0 / beta);
  }
  EXPECT_LE(over / 1e5, beta);
}

TEST(LaplaceTest, DeterministicGivenSeed) {
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(*Laplace(a, 1.0), *Laplace(b, 1.0));
}

TEST(ExpMechTest, UniformOnEqualProxies) {
  std::vector<double> w(5, 0.3);
  ExpMechDistribution q = *BuildExpMech(w, 1.0, 0.01);
  for (double p : q.weights()) EXPECT_DOUBLE_EQ(p, 0.2);
}

TEST(ExpMechTest, TwoToOneWeights) {
  const double eps0 = 0.5, sens = 0.01;
  const double w = std::log(2.0) * 2.0 * sens / eps0;
  ExpMechDistribution q = *BuildExpMech(std::vector<double>{0.0, w}, eps0, sens);
  EXPECT_NEAR(q.weight(0), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(q.weight(1), 1.0 / 3.0, 1e-12);
}

TEST(ExpMechTest, ShiftInvarianceAndNaiveAgreement) {
  std::vector<double> w = {0.1, 0.4, 0.25, 0.0, 0.9};
  const double eps0 = 0.3, sens = 0.1;
  ExpMechDistribution q = *BuildExpMech(w, eps0, sens);
  std::vector<double> shifted = w;
  for (double& x : shifted) x += 0.37;
  ExpMechDistribution q2 = *BuildExpMech(shifted, eps0, sens);
  double z = 0.0;
  for (double x : w) z += std::exp(-eps0 * x / (2 * sens));
  EXPECT_NEAR(q.log_normalizer(), std::log(z), 1e-12);
  double total = 0.0;
  for (size_t j = 0; j < w.size(); ++j) {
    EXPECT_NEAR(q.weight(j), q2.weight(j), 1e-12);
    EXPECT_NEAR(q.weight(j), std::exp(-eps0 * w[j] / (2 * sens)) / z,
                1e-12 * q.weight(j));
    EXPECT_GT(q.weight(j), 0.0);
    total += q.weight(j);
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(ExpMechTest, StableForHugeRates) {
  // Naive exponentials would all underflow.
  std::vector<double> w = {0.5, 0.5 + 1e-7, 0.9};
  ExpMechDistribution q = *BuildExpMech(w, 1.0, 1e-9);
  EXPECT_TRUE(std::isfinite(q.log_normalizer()));
  EXPECT_NEAR(q.weight(0) + q.weight(1) + q.weight(2), 1.0, 1e-12);
  EXPECT_GT(q.weight(0), q.weight(1));
}

TEST(ExpMechTest, BuildsFromProxyState) {
  ProxyState state(3);
  ExpMechDistribution q = *BuildExpMech(state, 1.0, 0.5);
  EXPECT_EQ(q.size(), 3u);
  EXPECT_NEAR(q.weight(1), 1.0 / 3.0, 1e-15);
}

TEST(ExpMechTest, RejectsBadInputs) {
  EXPECT_FALSE(BuildExpMech(std::vector<double>{}, 1.0, 1.0).ok());
  EXPECT_FALSE(BuildExpMech(std::vector<double>{0.0}, 0.0, 1.0).ok());
  EXPECT_FALSE(BuildExpMech(std::vector<double>{0.0}, 1.0, 0.0).ok());
}

TEST(DrawKTest, DegenerateWeightsPickTheMinimum) {
  const double eps0 = 1.0, sens = 0.01;
  const double gap = 50.0 * 2.0 * sens / eps0;
  ExpMechDistribution q =
      *BuildExpMech(std::vector<double>{gap, gap, 0.0, gap}, eps0, sens);
  Rng rng(3);
  for (size_t j : DrawK(q, rng, 1000)) EXPECT_EQ(j, 2u);
}

TEST(DrawKTest, UniformFrequencies) {
  const size_t n = 4, trials = 100000;
  ExpMechDistribution q = *BuildExpMech(std::vector<double>(n, 0.0), 1.0, 1.0);
  Rng rng(10);
  std::vector<size_t> counts(n, 0);
  for (size_t t = 0; t < trials; ++t) ++counts[DrawK(q, rng, 1)[0]];
  const double p = 1.0 / n;
  const double sd = std::sqrt(p * (1 - p) / trials);
  for (size_t c : counts) EXPECT_NEAR(c / double(trials), p, 3 * sd);
}

TEST(DrawKTest, DeterministicGivenSeed) {
  ExpMechDistribution q =
      *BuildExpMech(std::vector<double>{0.1, 0.2, 0.3}, 1.0, 0.1);
  Rng a(8), b(8);
  EXPECT_EQ(DrawK(q, a, 50), DrawK(q, b, 50));
}

}  // namespace
}  // namespace dphs

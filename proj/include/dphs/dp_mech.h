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

#ifndef DPHS_DP_MECH_H_
#define DPHS_DP_MECH_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "dphs/proxy_state.h"
#include "dphs/random.h"

namespace dphs {

// Budget split for the selection loop. Each of T rounds spends eps_svt on the
// sparse vector search and k * eps_exp on drawing the sample list; the final
// output draw spends one more eps_exp:
//   eps_exp = eps / (2 (kT + 1)),  eps_svt = eps / (2T),
//   T * eps_svt + (kT + 1) * eps_exp = eps.
struct PrivacyBudget {
  double eps_total = 0.0;
  double eps_exp = 0.0;
  double eps_svt = 0.0;
  int64_t k = 0;
  int64_t rounds = 0;

  static absl::StatusOr<PrivacyBudget> Create(double eps_total, int64_t k,
                                              int64_t rounds);

  // Expenditure of a run that executed `rounds_executed` rounds.
  double Spent(int64_t rounds_executed) const;
};

// Laplace(0, scale) from a single uniform u in (0, 1) by inverse CDF.
double LaplaceFromUniform(double u, double scale);

// Errors if scale is not positive.
absl::StatusOr<double> Laplace(Rng& rng, double scale);

// Exponential mechanism over hypotheses with utility -distance:
//   Q(H_j) proportional to exp(-eps0 * distance_j / (2 * sensitivity)).
class ExpMechDistribution {
 public:
  std::span<const double> weights() const { return weights_; }
  double weight(size_t j) const { return weights_[j]; }
  size_t size() const { return weights_.size(); }
  double eps0() const { return eps0_; }
  double sensitivity() const { return sensitivity_; }

  // log Z, Z = sum_j exp(-eps0 * distance_j / (2 * sensitivity)), computed
  // without underflow.
  double log_normalizer() const { return log_normalizer_; }

  // One draw by CDF and binary search.
  size_t Draw(Rng& rng) const;

 private:
  friend absl::StatusOr<ExpMechDistribution> BuildExpMech(
      std::span<const double> distances, double eps0, double sensitivity);

  std::vector<double> weights_;
  std::vector<double> cdf_;
  double eps0_ = 0.0;
  double sensitivity_ = 0.0;
  double log_normalizer_ = 0.0;
};

// Exponents are shifted by the minimum distance before exponentiation, which
// leaves the distribution unchanged. Errors on empty input or nonpositive
// eps0 or sensitivity.
absl::StatusOr<ExpMechDistribution> BuildExpMech(
    std::span<const double> distances, double eps0, double sensitivity);

inline absl::StatusOr<ExpMechDistribution> BuildExpMech(
    const ProxyState& state, double eps0, double sensitivity) {
  return BuildExpMech(state.proxies(), eps0, sensitivity);
}

// k i.i.d. draws. The caller accounts k * eps0 of budget.
std::vector<size_t> DrawK(const ExpMechDistribution& dist, Rng& rng,
                          size_t k);

}  // namespace dphs

#endif  // DPHS_DP_MECH_H_

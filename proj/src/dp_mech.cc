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

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dphs/summation.h"

namespace dphs {

absl::StatusOr<PrivacyBudget> PrivacyBudget::Create(double eps_total,
                                                    int64_t k, int64_t rounds) {
  if (!(eps_total > 0.0) || !std::isfinite(eps_total)) {
    return absl::InvalidArgumentError("privacy budget must be positive");
  }
  if (k < 1 || rounds < 1) {
    return absl::InvalidArgumentError(
        "sample-list size and round count must be positive");
  }
  PrivacyBudget b;
  b.eps_total = eps_total;
  b.k = k;
  b.rounds = rounds;
  b.eps_exp = eps_total / (2.0 * (static_cast<double>(k) *
                                      static_cast<double>(rounds) +
                                  1.0));
  b.eps_svt = eps_total / (2.0 * static_cast<double>(rounds));
  return b;
}

double PrivacyBudget::Spent(int64_t rounds_executed) const {
  const double t = static_cast<double>(rounds_executed);
  return t * eps_svt + (static_cast<double>(k) * t + 1.0) * eps_exp;
}

double LaplaceFromUniform(double u, double scale) {
  const double centered = u - 0.5;
  if (centered == 0.0) return 0.0;
  const double magnitude = -scale * std::log1p(-2.0 * std::fabs(centered));
  return centered < 0.0 ? -magnitude : magnitude;
}

absl::StatusOr<double> Laplace(Rng& rng, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Laplace scale must be positive, got ", scale));
  }
  return LaplaceFromUniform(UniformOpen01(rng), scale);
}

absl::StatusOr<ExpMechDistribution> BuildExpMech(
    std::span<const double> distances, double eps0, double sensitivity) {
  if (distances.empty()) {
    return absl::InvalidArgumentError(
        "exponential mechanism needs at least one candidate");
  }
  if (!(eps0 > 0.0) || !(sensitivity > 0.0)) {
    return absl::InvalidArgumentError(
        "eps0 and sensitivity must be positive");
  }
  const double rate = eps0 / (2.0 * sensitivity);
  const double min_distance =
      *std::min_element(distances.begin(), distances.end());

  ExpMechDistribution dist;
  dist.eps0_ = eps0;
  dist.sensitivity_ = sensitivity;
  dist.weights_.resize(distances.size());
  CompensatedSum total;
  for (size_t j = 0; j < distances.size(); ++j) {
    dist.weights_[j] = std::exp(-rate * (distances[j] - min_distance));
    total.Add(dist.weights_[j]);
  }
  const double z = total.Value();
  dist.log_normalizer_ = -rate * min_distance + std::log(z);
  dist.cdf_.resize(distances.size());
  CompensatedSum running;
  for (size_t j = 0; j < distances.size(); ++j) {
    dist.weights_[j] /= z;
    running.Add(dist.weights_[j]);
    dist.cdf_[j] = running.Value();
  }
  return dist;
}

size_t ExpMechDistribution::Draw(Rng& rng) const {
  const double u = UniformOpen01(rng) * cdf_.back();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  size_t j = static_cast<size_t>(it - cdf_.begin());
  if (j >= cdf_.size()) j = cdf_.size() - 1;
  // Land on a positive-weight entry if rounding put u in a flat tail.
  while (j > 0 && weights_[j] == 0.0) --j;
  return j;
}

std::vector<size_t> DrawK(const ExpMechDistribution& dist, Rng& rng,
                          size_t k) {
  std::vector<size_t> out(k);
  for (auto& j : out) j = dist.Draw(rng);
  return out;
}

}  // namespace dphs

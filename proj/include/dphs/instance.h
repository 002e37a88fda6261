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

#ifndef DPHS_INSTANCE_H_
#define DPHS_INSTANCE_H_

#include <cstdint>
#include <string>

#include "absl/status/statusor.h"
#include "dphs/distributions.h"
#include "json.hpp"

namespace dphs {

// A selection problem: the known hypotheses, the distribution the data is
// drawn from, and the seed the instance was generated with.
//
// File format:
//   { "domain_size": d,
//     "hypotheses": [[...pmf...], ...],
//     "true_distribution": [...pmf...],
//     "seed": u64 }
struct Instance {
  HypothesisClass hypotheses;
  DiscreteDistribution true_distribution;
  uint64_t seed = 0;
};

absl::StatusOr<Instance> InstanceFromJson(const nlohmann::json& j);
nlohmann::json InstanceToJson(const Instance& instance);

absl::StatusOr<Instance> LoadInstance(const std::string& path);
absl::Status SaveInstance(const Instance& instance, const std::string& path);

}  // namespace dphs

#endif  // DPHS_INSTANCE_H_

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

#include "dphs/dataset.h"

#include <cassert>
#include <string>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dphs {

absl::StatusOr<Dataset> Dataset::Create(std::vector<uint32_t> samples,
                                        size_t domain_size) {
  if (domain_size == 0) {
    return absl::InvalidArgumentError("dataset domain size must be positive");
  }
  for (size_t k = 0; k < samples.size(); ++k) {
    if (samples[k] >= domain_size) {
      return absl::InvalidArgumentError(
          absl::StrCat("sample ", k, " has value ", samples[k],
                       " outside domain of size ", domain_size));
    }
  }
  return Dataset(std::move(samples), domain_size);
}

Dataset Dataset::WithSubstitution(size_t position, uint32_t value) const {
  assert(position < samples_.size());
  assert(value < domain_size_);
  Dataset copy = *this;
  copy.samples_[position] = value;
  return copy;
}

size_t Dataset::HammingDistance(const Dataset& other) const {
  assert(other.size() == size());
  size_t differing = 0;
  for (size_t k = 0; k < samples_.size(); ++k) {
    if (samples_[k] != other.samples_[k]) ++differing;
  }
  return differing;
}

nlohmann::json Dataset::ToJson() const { return nlohmann::json(samples_); }

absl::StatusOr<Dataset> Dataset::FromJson(const nlohmann::json& j,
                                          size_t domain_size) {
  if (!j.is_array()) {
    return absl::InvalidArgumentError("dataset JSON must be an array");
  }
  std::vector<uint32_t> samples;
  samples.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<int64_t>() < 0) {
      return absl::InvalidArgumentError(
          "dataset entries must be nonnegative integers");
    }
    const int64_t x = v.get<int64_t>();
    if (static_cast<uint64_t>(x) >= domain_size) {
      return absl::InvalidArgumentError(
          absl::StrCat("dataset entry ", x, " outside domain of size ",
                       domain_size));
    }
    samples.push_back(static_cast<uint32_t>(x));
  }
  return Create(std::move(samples), domain_size);
}

}  // namespace dphs

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

#ifndef DPHS_DATASET_H_
#define DPHS_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"

namespace dphs {

// An ordered list of draws over the domain {0, ..., domain_size - 1}. This is
// the private input: two datasets are neighbors when they have equal length
// and differ at exactly one position.
class Dataset {
 public:
  Dataset() = default;

  // Fails if domain_size is zero or any sample lies outside the domain.
  static absl::StatusOr<Dataset> Create(std::vector<uint32_t> samples,
                                        size_t domain_size);

  size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  size_t domain_size() const { return domain_size_; }
  uint32_t operator[](size_t position) const { return samples_[position]; }
  std::span<const uint32_t> samples() const { return samples_; }

  // Copy of this dataset with one position replaced. Unchecked beyond
  // debug assertions; callers guarantee position < size() and
  // value < domain_size().
  Dataset WithSubstitution(size_t position, uint32_t value) const;

  // Number of positions at which the two datasets differ. Both must have
  // equal length.
  size_t HammingDistance(const Dataset& other) const;

  // JSON integer array.
  nlohmann::json ToJson() const;
  static absl::StatusOr<Dataset> FromJson(const nlohmann::json& j,
                                          size_t domain_size);

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  Dataset(std::vector<uint32_t> samples, size_t domain_size)
      : samples_(std::move(samples)), domain_size_(domain_size) {}

  std::vector<uint32_t> samples_;
  size_t domain_size_ = 0;
};

}  // namespace dphs

#endif  // DPHS_DATASET_H_

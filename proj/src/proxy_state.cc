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

#include "dphs/proxy_state.h"

#include <algorithm>
#include <bit>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dphs {

absl::StatusOr<ProxyState> ProxyState::FromPromptingSet(
    std::span<const size_t> prompting_set, const SemiDistanceOracle& oracle) {
  ProxyState state(oracle.hypotheses().size());
  for (size_t i : prompting_set) {
    if (absl::Status s = state.AddPromptingHypothesis(i, oracle); !s.ok()) {
      return s;
    }
  }
  return state;
}

absl::Status ProxyState::AddPromptingHypothesis(
    size_t i, const SemiDistanceOracle& oracle) {
  if (i >= proxies_.size()) {
    return absl::OutOfRangeError(
        absl::StrCat("prompting hypothesis ", i, " out of range"));
  }
  if (in_set_[i]) {
    return absl::InvalidArgumentError(
        absl::StrCat("hypothesis ", i, " is already in the prompting set"));
  }
  in_set_[i] = true;
  prompting_set_.push_back(i);
  for (size_t j = 0; j < proxies_.size(); ++j) {
    proxies_[j] = std::max(proxies_[j], oracle.SemiDistance(i, j));
  }
  return absl::OkStatus();
}

std::vector<size_t> ProxyState::RemainingCandidates() const {
  std::vector<size_t> out;
  out.reserve(proxies_.size() - prompting_set_.size());
  for (size_t i = 0; i < proxies_.size(); ++i) {
    if (!in_set_[i]) out.push_back(i);
  }
  return out;
}

uint64_t ProxyState::Hash() const {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (double v : proxies_) {
    uint64_t bits = std::bit_cast<uint64_t>(v);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

}  // namespace dphs

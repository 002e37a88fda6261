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

#ifndef DPHS_PROXY_STATE_H_
#define DPHS_PROXY_STATE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "dphs/empirical.h"

namespace dphs {

// Proxy distances W(H_j) = max_{k in A} w_k(H_j) together with the prompting
// set A. Proxies start at zero and never decrease.
class ProxyState {
 public:
  explicit ProxyState(size_t n) : proxies_(n, 0.0), in_set_(n, false) {}

  // Recomputes the state for the given prompting set from scratch.
  static absl::StatusOr<ProxyState> FromPromptingSet(
      std::span<const size_t> prompting_set, const SemiDistanceOracle& oracle);

  size_t size() const { return proxies_.size(); }
  double proxy(size_t j) const { return proxies_[j]; }
  std::span<const double> proxies() const { return proxies_; }
  std::span<const size_t> prompting_set() const { return prompting_set_; }
  bool InPromptingSet(size_t i) const { return in_set_[i]; }

  // Appends i to A and raises every proxy to max(W(H_j), w_i(H_j)). Costs n
  // oracle queries. Errors if i is out of range or already in A.
  absl::Status AddPromptingHypothesis(size_t i,
                                      const SemiDistanceOracle& oracle);

  // Hypotheses not yet in A, ascending.
  std::vector<size_t> RemainingCandidates() const;

  // FNV-1a over the bit patterns of the proxies.
  uint64_t Hash() const;

 private:
  std::vector<double> proxies_;
  std::vector<bool> in_set_;
  std::vector<size_t> prompting_set_;
};

}  // namespace dphs

#endif  // DPHS_PROXY_STATE_H_

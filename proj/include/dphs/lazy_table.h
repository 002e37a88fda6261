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

#ifndef DPHS_LAZY_TABLE_H_
#define DPHS_LAZY_TABLE_H_

#include <atomic>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <optional>

namespace dphs {

// Fixed-size table of lazily computed doubles, safe for concurrent readers.
// Empty slots hold NaN. Two threads racing on the same slot both store the
// same deterministic value, so any read observes either "absent" or the value
// a fresh recomputation would produce.
class LazyTable {
 public:
  LazyTable() = default;
  explicit LazyTable(size_t size) : size_(size) {
    if (size_ > 0) {
      slots_ = std::make_unique<std::atomic<double>[]>(size_);
      Clear();
    }
  }

  LazyTable(const LazyTable& other) : LazyTable(other.size_) {
    for (size_t i = 0; i < size_; ++i) {
      slots_[i].store(other.slots_[i].load(std::memory_order_relaxed),
                      std::memory_order_relaxed);
    }
  }
  LazyTable& operator=(const LazyTable& other) {
    if (this != &other) *this = LazyTable(other);
    return *this;
  }
  LazyTable(LazyTable&&) noexcept = default;
  LazyTable& operator=(LazyTable&&) noexcept = default;

  size_t size() const { return size_; }

  std::optional<double> Get(size_t index) const {
    const double v = slots_[index].load(std::memory_order_relaxed);
    if (std::isnan(v)) return std::nullopt;
    return v;
  }

  void Put(size_t index, double value) const {
    slots_[index].store(value, std::memory_order_relaxed);
  }

  void Clear() const {
    for (size_t i = 0; i < size_; ++i) {
      slots_[i].store(std::numeric_limits<double>::quiet_NaN(),
                      std::memory_order_relaxed);
    }
  }

 private:
  size_t size_ = 0;
  std::unique_ptr<std::atomic<double>[]> slots_;
};

// Index of the unordered pair {i, j}, i != j, in a packed triangular layout.
inline size_t PairSlot(size_t i, size_t j) {
  const size_t lo = i < j ? i : j;
  const size_t hi = i < j ? j : i;
  return hi * (hi - 1) / 2 + lo;
}

inline size_t PairSlotCount(size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

}  // namespace dphs

#endif  // DPHS_LAZY_TABLE_H_

// Copyright 2026 The ioncav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ioncav/errors.hpp"

namespace ioncav {

enum class SubsystemKind { Qubit, Mode };

/// One tensor factor: a two-level system or a truncated bosonic mode.
struct Subsystem {
  SubsystemKind kind;
  int dim;  // 2 for qubits, n_max + 1 for modes

  friend bool operator==(const Subsystem&, const Subsystem&) = default;
};

inline Subsystem qubit_subsystem() { return {SubsystemKind::Qubit, 2}; }
inline Subsystem mode_subsystem(int n_max) {
  if (n_max < 0) throw std::invalid_argument("mode_subsystem: n_max < 0");
  return {SubsystemKind::Mode, n_max + 1};
}

/// Ordered list of tensor factors with the flat <-> multi index bijection.
///
/// The first subsystem is the most significant index digit, matching the
/// Kronecker-product convention used throughout: for factors (A, B) the
/// joint flat index is i_A * dim_B + i_B.
class BasisDescriptor {
 public:
  BasisDescriptor() = default;

  explicit BasisDescriptor(std::vector<Subsystem> subsystems)
      : subsystems_(std::move(subsystems)) {
    total_dim_ = 1;
    for (const auto& s : subsystems_) {
      if (s.dim < 1) throw std::invalid_argument("BasisDescriptor: subsystem dim < 1");
      if (s.kind == SubsystemKind::Qubit && s.dim != 2)
        throw std::invalid_argument("BasisDescriptor: qubit dim must be 2");
      if (total_dim_ > (int64_t(1) << 40) / s.dim)
        throw resource_error("BasisDescriptor: total dimension overflow");
      total_dim_ *= s.dim;
    }
  }

  int subsystem_count() const { return static_cast<int>(subsystems_.size()); }
  const Subsystem& subsystem(int i) const { return subsystems_.at(size_t(i)); }
  const std::vector<Subsystem>& subsystems() const { return subsystems_; }
  int64_t dim() const { return total_dim_; }

  int64_t flat_index(std::span<const int> multi) const {
    if (multi.size() != subsystems_.size())
      throw std::invalid_argument("flat_index: wrong multi-index length");
    int64_t flat = 0;
    for (size_t i = 0; i < subsystems_.size(); ++i) {
      if (multi[i] < 0 || multi[i] >= subsystems_[i].dim)
        throw std::out_of_range("flat_index: digit out of range");
      flat = flat * subsystems_[i].dim + multi[i];
    }
    return flat;
  }

  void multi_index(int64_t flat, std::span<int> out) const {
    if (flat < 0 || flat >= total_dim_) throw std::out_of_range("multi_index: flat index out of range");
    if (out.size() != subsystems_.size())
      throw std::invalid_argument("multi_index: wrong output length");
    for (size_t i = subsystems_.size(); i-- > 0;) {
      out[i] = static_cast<int>(flat % subsystems_[i].dim);
      flat /= subsystems_[i].dim;
    }
  }

  std::vector<int> multi_index(int64_t flat) const {
    std::vector<int> out(subsystems_.size());
    multi_index(flat, out);
    return out;
  }

  /// Stride of subsystem i in the flat index (product of later dims).
  int64_t stride(int i) const {
    int64_t s = 1;
    for (size_t j = size_t(i) + 1; j < subsystems_.size(); ++j) s *= subsystems_[j].dim;
    return s;
  }

  /// Basis of the concatenated factor list (this ⊗ other).
  BasisDescriptor concat(const BasisDescriptor& other) const {
    std::vector<Subsystem> subs = subsystems_;
    subs.insert(subs.end(), other.subsystems_.begin(), other.subsystems_.end());
    return BasisDescriptor(std::move(subs));
  }

  /// Basis restricted to the listed subsystems, in the listed order.
  BasisDescriptor subset(std::span<const int> keep) const {
    std::vector<Subsystem> subs;
    subs.reserve(keep.size());
    for (int i : keep) subs.push_back(subsystem(i));
    return BasisDescriptor(std::move(subs));
  }

  friend bool operator==(const BasisDescriptor& a, const BasisDescriptor& b) {
    return a.subsystems_ == b.subsystems_;
  }

 private:
  std::vector<Subsystem> subsystems_;
  int64_t total_dim_ = 1;
};

}  // namespace ioncav

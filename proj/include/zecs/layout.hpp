// Copyright 2026 The ZECS Toolkit Authors
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

// Device coupling graphs.

#pragma once

#include <algorithm>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zecs/error.hpp"

namespace zecs {

using QubitPair = std::pair<int, int>;

inline QubitPair ordered(int a, int b) { return a < b ? QubitPair{a, b} : QubitPair{b, a}; }

class DeviceLayout {
 public:
  DeviceLayout(int num_qubits, std::vector<QubitPair> edges)
      : num_qubits_(num_qubits), edges_(std::move(edges)), adjacency_(static_cast<std::size_t>(num_qubits)) {
    if (num_qubits < 1) throw Error(ErrorCode::InvalidArgument, "layout needs at least one qubit");
    std::set<QubitPair> seen;
    for (const auto& [a, b] : edges_) {
      if (a < 0 || b < 0 || a >= num_qubits || b >= num_qubits) {
        throw Error(ErrorCode::IndexOutOfRange, "edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
      }
      if (a == b) throw Error(ErrorCode::InvalidArgument, "self-loop on qubit " + std::to_string(a));
      if (!seen.insert(ordered(a, b)).second) {
        throw Error(ErrorCode::InvalidArgument, "duplicate edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
      }
      adjacency_[static_cast<std::size_t>(a)].push_back(b);
      adjacency_[static_cast<std::size_t>(b)].push_back(a);
    }
    for (auto& n : adjacency_) std::sort(n.begin(), n.end());
  }

  int num_qubits() const noexcept { return num_qubits_; }
  const std::vector<QubitPair>& edges() const noexcept { return edges_; }
  const std::vector<int>& neighbors(int q) const { return adjacency_.at(static_cast<std::size_t>(q)); }

  bool has_edge(int a, int b) const {
    if (a < 0 || a >= num_qubits_) return false;
    const auto& n = adjacency_[static_cast<std::size_t>(a)];
    return std::binary_search(n.begin(), n.end(), b);
  }

  /// True when some qubit of `a` equals or is coupled to some qubit of `b`.
  bool touches(std::span<const int> a, std::span<const int> b) const {
    for (int x : a)
      for (int y : b)
        if (x == y || has_edge(x, y)) return true;
    return false;
  }

  friend bool operator==(const DeviceLayout& a, const DeviceLayout& b) {
    if (a.num_qubits_ != b.num_qubits_ || a.edges_.size() != b.edges_.size()) return false;
    std::set<QubitPair> ea, eb;
    for (const auto& [x, y] : a.edges_) ea.insert(ordered(x, y));
    for (const auto& [x, y] : b.edges_) eb.insert(ordered(x, y));
    return ea == eb;
  }

 private:
  int num_qubits_;
  std::vector<QubitPair> edges_;
  std::vector<std::vector<int>> adjacency_;
};

/// The 127-qubit heavy-hex coupling graph: seven rows (14, 15 x 5, 14 qubits)
/// joined by four bridge qubits between consecutive rows.
inline DeviceLayout heavy_hex_127() {
  std::vector<QubitPair> edges;
  auto chain = [&](int first, int last) {
    for (int q = first; q < last; ++q) edges.emplace_back(q, q + 1);
  };
  auto bridge = [&](int upper, int b, int lower) {
    edges.emplace_back(upper, b);
    edges.emplace_back(b, lower);
  };
  chain(0, 13);
  bridge(0, 14, 18), bridge(4, 15, 22), bridge(8, 16, 26), bridge(12, 17, 30);
  chain(18, 32);
  bridge(20, 33, 39), bridge(24, 34, 43), bridge(28, 35, 47), bridge(32, 36, 51);
  chain(37, 51);
  bridge(37, 52, 56), bridge(41, 53, 60), bridge(45, 54, 64), bridge(49, 55, 68);
  chain(56, 70);
  bridge(58, 71, 77), bridge(62, 72, 81), bridge(66, 73, 85), bridge(70, 74, 89);
  chain(75, 89);
  bridge(75, 90, 94), bridge(79, 91, 98), bridge(83, 92, 102), bridge(87, 93, 106);
  chain(94, 108);
  bridge(96, 109, 114), bridge(100, 110, 118), bridge(104, 111, 122), bridge(108, 112, 126);
  chain(113, 126);
  return DeviceLayout(127, std::move(edges));
}

}  // namespace zecs

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

#pragma once

#include <vector>

#include "zecs/routing.hpp"

namespace zecs::testing {

struct ScoredGraph {
  DeviceLayout layout;
  EdgeScores scores;
};

/// A random spanning tree plus extra edges, so long paths exist. With
/// `dyadic`, scores are multiples of 1/1024 and chain sums are exact.
inline ScoredGraph random_scored_graph(Rng& rng, int n, bool dyadic = false) {
  std::vector<QubitPair> edges;
  auto has = [&](int a, int b) {
    for (const auto& e : edges)
      if (e == ordered(a, b)) return true;
    return false;
  };
  for (int v = 1; v < n; ++v) edges.push_back(ordered(v, static_cast<int>(rng.index(static_cast<std::uint64_t>(v)))));
  const int extra = n / 2 + static_cast<int>(rng.index(static_cast<std::uint64_t>(n)));
  for (int i = 0; i < extra; ++i) {
    const int a = static_cast<int>(rng.index(static_cast<std::uint64_t>(n)));
    const int b = static_cast<int>(rng.index(static_cast<std::uint64_t>(n)));
    if (a != b && !has(a, b)) edges.push_back(ordered(a, b));
  }
  ScoredGraph g{DeviceLayout(n, edges), {}};
  for (const auto& e : g.layout.edges()) {
    EdgeScore s{rng.uniform(0.85, 1.0), rng.uniform(0.0, 0.4)};
    if (dyadic) {
      s.fidelity = 1.0 - static_cast<double>(rng.index(100)) / 1024.0;
      s.s_ij = static_cast<double>(rng.index(300)) / 1024.0;
    }
    g.scores[ordered(e.first, e.second)] = s;
  }
  return g;
}

}  // namespace zecs::testing

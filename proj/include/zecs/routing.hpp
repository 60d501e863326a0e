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

// Selection of a minimum-cost chain (simple path) of qubits from per-edge
// fidelity and entropy scores.
//
// Edge cost is (1 - F) + w * s. A chain costs the sum over its edges, added
// in sequence order. Among equal costs the lexicographically smallest qubit
// sequence wins; a chain and its reverse are the same chain, reported with
// first < last.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zecs/diagnostics.hpp"
#include "zecs/error.hpp"
#include "zecs/layout.hpp"
#include "zecs/parallel.hpp"
#include "zecs/rng.hpp"

namespace zecs {

struct EdgeScore {
  double fidelity = 1.0;
  double s_ij = 0.0;

  friend bool operator==(const EdgeScore&, const EdgeScore&) = default;
};

/// Keyed by the ordered pair (min, max). Layout edges missing here are
/// unscored and never routed through.
using EdgeScores = std::map<QubitPair, EdgeScore>;

struct ChainSolution {
  std::vector<int> qubits;
  double cost = 0.0;
  double mean_fidelity = 0.0;
  double mean_entropy = 0.0;
  /// Set when the expansion budget ran out and beam search produced the chain.
  bool approximate = false;
  std::uint64_t expansions = 0;
};

inline double edge_cost(const EdgeScore& e, double w) { return (1.0 - e.fidelity) + w * e.s_ij; }

namespace detail {

inline const EdgeScore& score_of(const EdgeScores& scores, int a, int b) {
  const auto it = scores.find(ordered(a, b));
  if (it == scores.end()) {
    throw Error(ErrorCode::UnscoredEdge, "edge (" + std::to_string(a) + "," + std::to_string(b) + ") has no score");
  }
  return it->second;
}

inline void require_simple(std::span<const int> chain) {
  if (chain.size() < 2) throw Error(ErrorCode::NotAPath, "a chain needs at least 2 qubits");
  for (std::size_t i = 0; i < chain.size(); ++i)
    for (std::size_t j = i + 1; j < chain.size(); ++j)
      if (chain[i] == chain[j]) throw Error(ErrorCode::NotAPath, "qubit " + std::to_string(chain[i]) + " repeats");
}

inline void require_routing_args(const DeviceLayout& layout, int length, double w) {
  if (length < 2) throw Error(ErrorCode::InvalidArgument, "chain length must be >= 2");
  if (!(w >= 0.0)) throw Error(ErrorCode::InvalidArgument, "entropy weight must be >= 0");
  if (length > layout.num_qubits()) {
    throw Error(ErrorCode::NoPathOfLength, "layout has fewer than " + std::to_string(length) + " qubits");
  }
}

/// Scored adjacency with per-edge costs; neighbors ascending.
struct CostGraph {
  std::vector<std::vector<std::pair<int, double>>> adj;
  std::vector<double> smallest_prefix;  // smallest_prefix[k] = sum of the k cheapest edges

  CostGraph(const DeviceLayout& layout, const EdgeScores& scores, double w, int length)
      : adj(static_cast<std::size_t>(layout.num_qubits())) {
    std::vector<double> costs;
    for (const auto& [a, b] : layout.edges()) {
      const auto it = scores.find(ordered(a, b));
      if (it == scores.end()) continue;
      const double c = edge_cost(it->second, w);
      if (!(c >= 0.0)) throw Error(ErrorCode::InvalidArgument, "negative or NaN edge cost; fidelity must be in [0, 1]");
      adj[static_cast<std::size_t>(a)].emplace_back(b, c);
      adj[static_cast<std::size_t>(b)].emplace_back(a, c);
      costs.push_back(c);
    }
    for (auto& n : adj) std::sort(n.begin(), n.end());
    std::sort(costs.begin(), costs.end());
    smallest_prefix.assign(static_cast<std::size_t>(length), 0.0);
    for (std::size_t k = 1; k < smallest_prefix.size(); ++k)
      smallest_prefix[k] = smallest_prefix[k - 1] + (k - 1 < costs.size() ? costs[k - 1] : 0.0);
  }
};

struct Candidate {
  double cost = std::numeric_limits<double>::infinity();
  std::vector<int> seq;

  bool better_than(const Candidate& o) const {
    if (cost != o.cost) return cost < o.cost;
    return seq < o.seq;
  }
};

inline void atomic_min(std::atomic<double>& target, double value) {
  double cur = target.load();
  while (value < cur && !target.compare_exchange_weak(cur, value)) {
  }
}

inline ChainSolution make_solution(std::vector<int> qubits, const EdgeScores& scores, double w) {
  ChainSolution s;
  double f = 0.0, e = 0.0;
  for (std::size_t i = 0; i + 1 < qubits.size(); ++i) {
    const auto& sc = score_of(scores, qubits[i], qubits[i + 1]);
    s.cost += edge_cost(sc, w);
    f += sc.fidelity;
    e += sc.s_ij;
  }
  const double edges = static_cast<double>(qubits.size() - 1);
  s.mean_fidelity = f / edges;
  s.mean_entropy = e / edges;
  s.qubits = std::move(qubits);
  return s;
}

}  // namespace detail

/// Chain cost from scores alone; every consecutive pair must be scored.
inline double score_chain(std::span<const int> chain, const EdgeScores& scores, double w = 1.0) {
  detail::require_simple(chain);
  double cost = 0.0;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) cost += edge_cost(detail::score_of(scores, chain[i], chain[i + 1]), w);
  return cost;
}

/// As above, additionally requiring consecutive qubits to be coupled.
inline double score_chain(const DeviceLayout& layout, std::span<const int> chain, const EdgeScores& scores,
                          double w = 1.0) {
  detail::require_simple(chain);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (!layout.has_edge(chain[i], chain[i + 1])) {
      throw Error(ErrorCode::NotAPath, "qubits " + std::to_string(chain[i]) + " and " + std::to_string(chain[i + 1]) +
                                           " are not coupled");
    }
  return score_chain(chain, scores, w);
}

struct RoutingOptions {
  std::uint64_t expansion_budget = 100'000'000;
  std::size_t beam_width = 4096;
};

/// Deterministic beam search; used when the exact search exceeds its budget.
inline std::optional<ChainSolution> beam_chain(const DeviceLayout& layout, const EdgeScores& scores, int length,
                                               double w, std::size_t beam_width) {
  detail::require_routing_args(layout, length, w);
  const detail::CostGraph g(layout, scores, w, length);
  std::vector<detail::Candidate> beam;
  for (int q = 0; q < layout.num_qubits(); ++q) beam.push_back({0.0, {q}});
  for (int step = 1; step < length && !beam.empty(); ++step) {
    std::vector<detail::Candidate> next;
    for (const auto& c : beam)
      for (const auto& [nb, cost] : g.adj[static_cast<std::size_t>(c.seq.back())]) {
        if (std::find(c.seq.begin(), c.seq.end(), nb) != c.seq.end()) continue;
        detail::Candidate n{c.cost + cost, c.seq};
        n.seq.push_back(nb);
        next.push_back(std::move(n));
      }
    std::sort(next.begin(), next.end(), [](const auto& a, const auto& b) { return a.better_than(b); });
    if (next.size() > beam_width) next.resize(beam_width);
    beam = std::move(next);
  }
  std::optional<detail::Candidate> best;
  for (auto c : beam) {
    if (c.seq.front() > c.seq.back()) {
      std::reverse(c.seq.begin(), c.seq.end());
      c.cost = score_chain(c.seq, scores, w);
    }
    if (!best || c.better_than(*best)) best = c;
  }
  if (!best) return std::nullopt;
  auto s = detail::make_solution(best->seq, scores, w);
  s.approximate = true;
  return s;
}

/// Exact minimum-cost chain of `length` qubits by branch and bound.
inline ChainSolution best_chain(const DeviceLayout& layout, const EdgeScores& scores, int length, double w = 1.0,
                                const RoutingOptions& options = {}) {
  detail::require_routing_args(layout, length, w);
  const detail::CostGraph g(layout, scores, w, length);
  const std::size_t n = static_cast<std::size_t>(layout.num_qubits());
  const std::size_t target_edges = static_cast<std::size_t>(length - 1);
  constexpr double kSlack = 1e-9;

  std::atomic<double> bound{std::numeric_limits<double>::infinity()};
  std::atomic<std::uint64_t> expansions{0};
  std::atomic<bool> exhausted{false};
  const std::uint64_t chunk = std::clamp<std::uint64_t>(options.expansion_budget, 1, 4096);
  std::vector<detail::Candidate> per_root(n);

  parallel_for(n, [&](std::size_t root) {
    detail::Candidate& best = per_root[root];
    std::vector<int> seq{static_cast<int>(root)};
    std::vector<char> used(n, 0);
    used[root] = 1;
    std::uint64_t local = 0;
    auto dfs = [&](auto&& self, double cost) -> void {
      if (exhausted.load(std::memory_order_relaxed)) return;
      if (++local % chunk == 0 && expansions.fetch_add(chunk) + chunk > options.expansion_budget) {
        exhausted = true;
        return;
      }
      const std::size_t edges = seq.size() - 1;
      if (edges == target_edges) {
        if (seq.back() < seq.front()) return;  // reverse orientation is enumerated from the other end
        detail::Candidate c{cost, seq};
        if (c.better_than(best)) {
          best = std::move(c);
          detail::atomic_min(bound, cost);
        }
        return;
      }
      for (const auto& [nb, ec] : g.adj[static_cast<std::size_t>(seq.back())]) {
        if (used[static_cast<std::size_t>(nb)]) continue;
        if (edges + 1 == target_edges && nb < seq.front()) continue;
        const double next = cost + ec;
        if (next + g.smallest_prefix[target_edges - edges - 1] > bound.load(std::memory_order_relaxed) + kSlack) {
          continue;
        }
        used[static_cast<std::size_t>(nb)] = 1;
        seq.push_back(nb);
        self(self, next);
        seq.pop_back();
        used[static_cast<std::size_t>(nb)] = 0;
      }
    };
    dfs(dfs, 0.0);
    expansions.fetch_add(local % chunk);
  });

  if (exhausted) {
    auto approx = beam_chain(layout, scores, length, w, options.beam_width);
    if (!approx) throw Error(ErrorCode::NoPathOfLength, "no scored chain of " + std::to_string(length) + " qubits");
    approx->expansions = expansions.load();
    return *approx;
  }
  std::optional<detail::Candidate> best;
  for (const auto& c : per_root)
    if (!c.seq.empty() && (!best || c.better_than(*best))) best = c;
  if (!best) throw Error(ErrorCode::NoPathOfLength, "no scored chain of " + std::to_string(length) + " qubits");
  auto s = detail::make_solution(best->seq, scores, w);
  s.expansions = expansions.load();
  return s;
}

/// Exhaustive enumeration of every scored chain; a reference for best_chain.
inline ChainSolution brute_force_chains(const DeviceLayout& layout, const EdgeScores& scores, int length,
                                        double w = 1.0, std::uint64_t max_paths = 10'000'000) {
  detail::require_routing_args(layout, length, w);
  const detail::CostGraph g(layout, scores, w, length);
  const std::size_t n = static_cast<std::size_t>(layout.num_qubits());
  std::optional<detail::Candidate> best;
  std::uint64_t paths = 0;
  std::vector<int> seq;
  std::vector<char> used(n, 0);
  auto dfs = [&](auto&& self, double cost) -> void {
    if (seq.size() == static_cast<std::size_t>(length)) {
      if (seq.back() < seq.front()) return;
      if (++paths > max_paths) throw Error(ErrorCode::TooLarge, "more than " + std::to_string(max_paths) + " chains");
      detail::Candidate c{cost, seq};
      if (!best || c.better_than(*best)) best = std::move(c);
      return;
    }
    for (const auto& [nb, ec] : g.adj[static_cast<std::size_t>(seq.back())]) {
      if (used[static_cast<std::size_t>(nb)]) continue;
      used[static_cast<std::size_t>(nb)] = 1;
      seq.push_back(nb);
      self(self, cost + ec);
      seq.pop_back();
      used[static_cast<std::size_t>(nb)] = 0;
    }
  };
  for (std::size_t root = 0; root < n; ++root) {
    seq.assign(1, static_cast<int>(root));
    used[root] = 1;
    dfs(dfs, 0.0);
    used[root] = 0;
  }
  if (!best) throw Error(ErrorCode::NoPathOfLength, "no scored chain of " + std::to_string(length) + " qubits");
  return detail::make_solution(best->seq, scores, w);
}

/// A uniformly seeded self-avoiding walk over scored edges, retried until it
/// reaches `length` qubits. Returns nullopt after `attempts` failures.
inline std::optional<std::vector<int>> random_chain(const DeviceLayout& layout, const EdgeScores& scores, int length,
                                                    Rng& rng, int attempts = 10000) {
  for (int a = 0; a < attempts; ++a) {
    std::vector<int> seq{static_cast<int>(rng.index(static_cast<std::uint64_t>(layout.num_qubits())))};
    while (seq.size() < static_cast<std::size_t>(length)) {
      std::vector<int> options;
      for (int nb : layout.neighbors(seq.back()))
        if (scores.count(ordered(seq.back(), nb)) && std::find(seq.begin(), seq.end(), nb) == seq.end())
          options.push_back(nb);
      if (options.empty()) break;
      seq.push_back(options[rng.index(options.size())]);
    }
    if (seq.size() == static_cast<std::size_t>(length)) return seq;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Scores from a diagnostic report

namespace detail {

inline std::vector<QubitPair> crossing_edges(const DeviceLayout& layout, std::span<const int> a,
                                             std::span<const int> b) {
  std::vector<QubitPair> out;
  for (int x : a)
    for (int y : b)
      if (layout.has_edge(x, y)) out.push_back(ordered(x, y));
  return out;
}

}  // namespace detail

/// Edge fidelity: a pair entry scores its own edge; a pair+idle entry scores
/// the edge joining the idle qubit to the pair; a pair+pair entry scores the
/// edge joining the two pairs. The lowest fidelity wins when several entries
/// score one edge. F = 1 - infidelity_zecs.
///
/// Edge entropy: the largest entropy among three- and four-qubit entries whose
/// cut crosses the edge; otherwise the largest among those containing either
/// endpoint; otherwise 0. Normalized entropies are used when present.
inline EdgeScores edge_scores_from_report(const DeviceLayout& layout, const DiagnosticReport& report) {
  EdgeScores scores;
  std::map<QubitPair, double> crossing_s;
  std::vector<double> touching_s(static_cast<std::size_t>(layout.num_qubits()), -1.0);

  for (const auto& e : report.entries) {
    const std::size_t want = expected_size(e.kind);
    if (e.qubits.size() != want) throw Error(ErrorCode::BadSubsystem, "entry size does not match its kind");
    for (int q : e.qubits)
      if (q < 0 || q >= layout.num_qubits()) throw Error(ErrorCode::IndexOutOfRange, "qubit " + std::to_string(q));
    const std::span<const int> qs(e.qubits);
    const auto side_a = qs.subspan(0, e.kind == SubsystemKind::Pair ? 1 : 2);
    const auto side_b = qs.subspan(side_a.size());
    const auto edges = detail::crossing_edges(layout, side_a, side_b);
    if (edges.empty()) {
      throw Error(ErrorCode::BadSubsystem, "subsystem parts are not coupled on the layout");
    }
    const double f = 1.0 - e.infidelity_zecs;
    for (const auto& edge : edges) {
      auto [it, inserted] = scores.try_emplace(edge, EdgeScore{f, 0.0});
      if (!inserted) it->second.fidelity = std::min(it->second.fidelity, f);
    }
    if (e.kind == SubsystemKind::Pair) continue;
    const std::optional<double> s = e.s_ab_normalized ? e.s_ab_normalized : e.s_ab;
    if (!s) continue;
    for (const auto& edge : edges) {
      auto [it, inserted] = crossing_s.try_emplace(edge, *s);
      if (!inserted) it->second = std::max(it->second, *s);
    }
    for (int q : e.qubits) touching_s[static_cast<std::size_t>(q)] = std::max(touching_s[static_cast<std::size_t>(q)], *s);
  }
  for (auto& [edge, sc] : scores) {
    if (const auto it = crossing_s.find(edge); it != crossing_s.end()) {
      sc.s_ij = it->second;
    } else {
      const double t = std::max(touching_s[static_cast<std::size_t>(edge.first)],
                                touching_s[static_cast<std::size_t>(edge.second)]);
      sc.s_ij = std::max(0.0, t);
    }
  }
  return scores;
}

}  // namespace zecs

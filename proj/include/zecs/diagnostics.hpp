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

// Per-subsystem fidelity and entropy reports over a device, and the scan for
// entanglement between uncoupled qubit pairs.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zecs/error.hpp"
#include "zecs/layout.hpp"
#include "zecs/parallel.hpp"
#include "zecs/shadow.hpp"
#include "zecs/states.hpp"
#include "zecs/zero_entropy.hpp"

namespace zecs {

/// Pair: two coupled qubits. PairPlusIdle: a pair and one idle neighbor.
/// PairPair: two adjacent pairs.
enum class SubsystemKind { Pair, PairPlusIdle, PairPair };

inline std::string to_string(SubsystemKind k) {
  switch (k) {
    case SubsystemKind::Pair: return "pair";
    case SubsystemKind::PairPlusIdle: return "pair+idle";
    case SubsystemKind::PairPair: return "pair+pair";
  }
  return "?";
}

inline SubsystemKind subsystem_kind_from_string(const std::string& s) {
  if (s == "pair") return SubsystemKind::Pair;
  if (s == "pair+idle") return SubsystemKind::PairPlusIdle;
  if (s == "pair+pair") return SubsystemKind::PairPair;
  throw Error(ErrorCode::BadConfig, "unknown subsystem kind '" + s + "'");
}

inline std::size_t expected_size(SubsystemKind k) {
  switch (k) {
    case SubsystemKind::Pair: return 2;
    case SubsystemKind::PairPlusIdle: return 3;
    case SubsystemKind::PairPair: return 4;
  }
  return 0;
}

/// Qubit positions (within the subsystem) forming side A of the entropy cut.
inline std::vector<int> entropy_side_a(SubsystemKind k) {
  return k == SubsystemKind::Pair ? std::vector<int>{0} : std::vector<int>{0, 1};
}

struct SubsystemSpec {
  SubsystemKind kind = SubsystemKind::Pair;
  std::vector<int> qubits;
  std::optional<DensityOperator> reference;

  void validate() const {
    if (qubits.size() != expected_size(kind)) {
      throw Error(ErrorCode::BadSubsystem, to_string(kind) + " needs " + std::to_string(expected_size(kind)) +
                                               " qubits, got " + std::to_string(qubits.size()));
    }
    for (std::size_t a = 0; a < qubits.size(); ++a) {
      if (qubits[a] < 0) throw Error(ErrorCode::BadSubsystem, "negative qubit index");
      for (std::size_t b = a + 1; b < qubits.size(); ++b)
        if (qubits[a] == qubits[b]) throw Error(ErrorCode::BadSubsystem, "repeated qubit in subsystem");
    }
  }
};

/// Optional fields are absent for archived rows that did not publish them.
struct ReportEntry {
  SubsystemKind kind = SubsystemKind::Pair;
  std::vector<int> qubits;
  double infidelity_cs = 0.0;
  double infidelity_zecs = 0.0;
  std::optional<double> trace_distance;     // rho_zecs vs reference
  std::optional<double> trace_distance_cs;  // rho_cs vs reference
  std::optional<double> s_ab;
  std::optional<double> s_ab_normalized;
  std::optional<bool> degenerate_flag;
  std::optional<double> clamp_magnitude;
  std::optional<std::vector<double>> spectrum;

  friend bool operator==(const ReportEntry&, const ReportEntry&) = default;
};

/// PerKind divides each entropy by the maximum of its own kind. Global uses
/// one maximum over the three- and four-qubit kinds (pairs stay per kind).
enum class EntropyNorm { PerKind, Global };

inline std::string to_string(EntropyNorm n) { return n == EntropyNorm::PerKind ? "per-kind" : "global"; }

inline EntropyNorm entropy_norm_from_string(const std::string& s) {
  if (s == "per-kind") return EntropyNorm::PerKind;
  if (s == "global") return EntropyNorm::Global;
  throw Error(ErrorCode::BadConfig, "unknown entropy normalization '" + s + "'");
}

struct DiagnosticReport {
  EntropyNorm entropy_norm = EntropyNorm::PerKind;
  std::vector<ReportEntry> entries;

  friend bool operator==(const DiagnosticReport&, const DiagnosticReport&) = default;
};

/// Fills s_ab_normalized for every entry that carries s_ab.
inline void normalize_entropies(DiagnosticReport& report) {
  auto group_of = [&](SubsystemKind k) {
    if (k == SubsystemKind::Pair || report.entropy_norm == EntropyNorm::PerKind) return static_cast<int>(k);
    return -1;
  };
  auto max_of = [&](int group) {
    double m = 0.0;
    for (const auto& e : report.entries)
      if (e.s_ab && group_of(e.kind) == group) m = std::max(m, *e.s_ab);
    return m;
  };
  for (auto& e : report.entries) {
    if (!e.s_ab) continue;
    const double m = max_of(group_of(e.kind));
    e.s_ab_normalized = m > 0.0 ? *e.s_ab / m : 0.0;
  }
}

namespace detail {

inline void require_coverage(std::span<const SnapshotRecord> records, int max_qubit) {
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (static_cast<int>(records[i].bases.size()) <= max_qubit) {
      throw Error(ErrorCode::CoverageError, "record " + std::to_string(i) + " has " +
                                                std::to_string(records[i].bases.size()) +
                                                " qubits, subsystem needs qubit " + std::to_string(max_qubit));
    }
  }
}

}  // namespace detail

/// Reconstructs each subsystem from `records`, projects it, and compares both
/// estimates with the subsystem's reference state. Entropies are taken on the
/// projected (pure) state.
inline DiagnosticReport build_report(std::span<const SnapshotRecord> records, std::span<const SubsystemSpec> specs,
                                     EntropyNorm norm = EntropyNorm::PerKind) {
  int max_qubit = -1;
  for (const auto& s : specs) {
    s.validate();
    if (!s.reference) throw Error(ErrorCode::MissingReference, "no reference state for a subsystem");
    if (s.reference->n_qubits() != static_cast<int>(s.qubits.size())) {
      throw Error(ErrorCode::DimMismatch, "reference state size does not match subsystem");
    }
    for (int q : s.qubits) max_qubit = std::max(max_qubit, q);
  }
  detail::require_coverage(records, max_qubit);

  DiagnosticReport report{norm, std::vector<ReportEntry>(specs.size())};
  parallel_for(specs.size(), [&](std::size_t i) {
    const auto& spec = specs[i];
    const auto cs = accumulate_records(records, spec.qubits).rho_cs();
    const auto ze = zecs_project(cs);
    ClampCounter clamp;
    ReportEntry e;
    e.kind = spec.kind;
    e.qubits = spec.qubits;
    e.infidelity_cs = 1.0 - fidelity(cs, *spec.reference, clamp);
    e.infidelity_zecs = 1.0 - fidelity(ze.rho_zecs, *spec.reference);
    e.trace_distance = trace_distance(ze.rho_zecs, *spec.reference);
    e.trace_distance_cs = trace_distance(cs, *spec.reference);
    e.s_ab = entanglement_entropy(ze.rho_zecs, entropy_side_a(spec.kind));
    e.degenerate_flag = ze.degenerate_flag;
    e.clamp_magnitude = clamp.magnitude;
    e.spectrum = ze.spectrum;
    report.entries[i] = std::move(e);
  });
  normalize_entropies(report);
  return report;
}

// ---------------------------------------------------------------------------
// Non-local correlations

struct NonlocalHit {
  QubitPair target;
  QubitPair candidate;
  double s_ij = 0.0;
  double zscore = 0.0;
  bool flagged = false;
  /// Largest s_ij among this target's candidates.
  bool strongest = false;
};

inline constexpr double kNonlocalThreshold = 2.0;

/// (s - mean) / std with a zero score when the spread vanishes.
inline double zscore(double s, double mean, double std) { return std > 0.0 ? (s - mean) / std : 0.0; }

/// Candidates from `pairs` that neither overlap nor couple to `target`.
inline std::vector<QubitPair> uncoupled_candidates(const DeviceLayout& layout, QubitPair target,
                                                   std::span<const QubitPair> pairs) {
  const int t[2] = {target.first, target.second};
  std::vector<QubitPair> out;
  for (const auto& p : pairs) {
    const int c[2] = {p.first, p.second};
    if (!layout.touches(t, c)) out.push_back(p);
  }
  return out;
}

/// For each target, the entropy across target|candidate of the projected
/// four-qubit state, scored against the population mean and standard
/// deviation over that target's candidates.
inline std::vector<NonlocalHit> nonlocal_scan(std::span<const SnapshotRecord> records, const DeviceLayout& layout,
                                              std::span<const QubitPair> targets,
                                              std::span<const QubitPair> candidates) {
  if (candidates.size() < 3) {
    throw Error(ErrorCode::InsufficientCandidates, "need at least 3 candidates, got " +
                                                       std::to_string(candidates.size()));
  }
  int max_qubit = -1;
  for (const auto& t : targets) {
    const int tq[2] = {t.first, t.second};
    for (const auto& c : candidates) {
      const int cq[2] = {c.first, c.second};
      if (layout.touches(tq, cq)) {
        throw Error(ErrorCode::AdjacencyViolation, "candidate (" + std::to_string(c.first) + "," +
                                                       std::to_string(c.second) + ") touches target (" +
                                                       std::to_string(t.first) + "," + std::to_string(t.second) + ")");
      }
      max_qubit = std::max({max_qubit, t.first, t.second, c.first, c.second});
    }
  }
  detail::require_coverage(records, max_qubit);

  const std::size_t k = candidates.size();
  std::vector<NonlocalHit> hits(targets.size() * k);
  parallel_for(hits.size(), [&](std::size_t i) {
    const auto& t = targets[i / k];
    const auto& c = candidates[i % k];
    const std::vector<int> qubits{t.first, t.second, c.first, c.second};
    const auto ze = zecs_project(accumulate_records(records, qubits).rho_cs());
    hits[i] = {t, c, entanglement_entropy(ze.rho_zecs, {0, 1})};
  });
  for (std::size_t ti = 0; ti < targets.size(); ++ti) {
    const std::span<NonlocalHit> group(hits.data() + ti * k, k);
    double mean = 0.0;
    for (const auto& h : group) mean += h.s_ij;
    mean /= static_cast<double>(k);
    double var = 0.0;
    for (const auto& h : group) var += (h.s_ij - mean) * (h.s_ij - mean);
    const double std = std::sqrt(var / static_cast<double>(k));
    std::size_t best = 0;
    for (std::size_t j = 0; j < k; ++j) {
      group[j].zscore = zscore(group[j].s_ij, mean, std);
      group[j].flagged = group[j].zscore >= kNonlocalThreshold;
      if (group[j].s_ij > group[best].s_ij) best = j;
    }
    group[best].strongest = true;
  }
  return hits;
}

}  // namespace zecs

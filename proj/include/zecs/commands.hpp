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

// The pipeline steps behind the command-line tool. Each step is a pure
// function of its inputs and seed.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zecs/diagnostics.hpp"
#include "zecs/io.hpp"
#include "zecs/perturbation.hpp"
#include "zecs/routing.hpp"
#include "zecs/simulator.hpp"

namespace zecs {

struct RunConfig {
  std::uint64_t seed = 1;
  std::size_t n_snapshots = 6000;
  std::vector<SubsystemSpec> subsystems;
  std::string circuit_path;
  EntropyNorm entropy_norm = EntropyNorm::PerKind;
  double weight = 1.0;
  int length = 20;

  void validate() const {
    if (n_snapshots < 1) throw Error(ErrorCode::BadConfig, "snapshot count must be >= 1");
    if (length < 2) throw Error(ErrorCode::BadConfig, "chain length must be >= 2");
    if (!(weight >= 0.0)) throw Error(ErrorCode::BadConfig, "entropy weight must be >= 0");
  }
};

/// Samples `n_snapshots` records from `device` and wraps them with a header.
inline io::SnapshotFile cmd_simulate(const ProductState& device, std::size_t n_snapshots, std::uint64_t seed,
                                     io::Endianness order = io::Endianness::Q0Leftmost,
                                     const std::string& circuit_id = "") {
  if (n_snapshots < 1) throw Error(ErrorCode::BadConfig, "snapshot count must be >= 1");
  return io::make_snapshot_file(sample_shadow(device, n_snapshots, seed, circuit_id), device.n_qubits(), order);
}

/// References are the ideal reduced states of `reference_device`.
inline DiagnosticReport cmd_reconstruct(const io::SnapshotFile& snapshots, std::vector<SubsystemSpec> subsystems,
                                        const ProductState& reference_device,
                                        EntropyNorm norm = EntropyNorm::PerKind,
                                        const std::string& source = "snapshots") {
  if (snapshots.records.empty()) {
    throw Error(ErrorCode::EmptyAccumulator,
                source + ":" + std::to_string(snapshots.header ? 2 : 1) + ": no snapshot records");
  }
  if (subsystems.empty()) throw Error(ErrorCode::BadConfig, "no subsystems requested");
  for (auto& s : subsystems) {
    s.validate();
    for (int q : s.qubits)
      if (q >= reference_device.n_qubits()) {
        throw Error(ErrorCode::CoverageError, "subsystem qubit " + std::to_string(q) + " outside the circuit");
      }
    if (!s.reference) s.reference = reference_device.reduced(s.qubits);
  }
  return build_report(snapshots.records, subsystems, norm);
}

/// Normalizes the report entropies with `norm`, derives edge scores and
/// returns the best chain.
inline ChainSolution cmd_route(DiagnosticReport report, const DeviceLayout& layout, int length, double weight,
                               EntropyNorm norm = EntropyNorm::PerKind, const RoutingOptions& options = {}) {
  report.entropy_norm = norm;
  normalize_entropies(report);
  return best_chain(layout, edge_scores_from_report(layout, report), length, weight, options);
}

/// With no candidates given, every layout edge clear of all targets is a
/// candidate.
inline std::vector<NonlocalHit> cmd_nonlocal(const io::SnapshotFile& snapshots, const DeviceLayout& layout,
                                             const std::vector<QubitPair>& targets,
                                             std::vector<QubitPair> candidates = {}) {
  if (targets.empty()) throw Error(ErrorCode::BadConfig, "no target pairs");
  if (candidates.empty()) {
    candidates = layout.edges();
    for (const auto& t : targets) candidates = uncoupled_candidates(layout, t, candidates);
  }
  return nonlocal_scan(snapshots.records, layout, targets, candidates);
}

/// Perturbation study around the Bell state |Phi+>.
inline std::vector<PerturbationPoint> cmd_perturb_study(const std::vector<double>& sigmas, std::size_t trials,
                                                        std::uint64_t seed) {
  if (trials < 2) throw Error(ErrorCode::BadConfig, "perturbation study needs >= 2 trials");
  if (sigmas.empty()) throw Error(ErrorCode::BadConfig, "empty sigma grid");
  for (double s : sigmas)
    if (!(s >= 0.0)) throw Error(ErrorCode::BadConfig, "sigma must be >= 0");
  const double r = 1.0 / std::sqrt(2.0);
  const auto bell = DensityOperator::pure(std::vector<Complex>{r, 0.0, 0.0, r});
  return perturbation_study(bell, sigmas, trials, seed);
}

}  // namespace zecs

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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "nonlocal_fixture.hpp"
#include "test_util.hpp"
#include "zecs/diagnostics.hpp"

namespace zecs {
namespace {

// Pair (0, 1) in a random EfficientSU2 state, qubits 2 and 3 idle.
ProductState small_device(std::uint64_t seed) {
  Rng rng(seed);
  ProductState device(4);
  device.add_block({0, 1}, run(build_efficient_su2(2, 2, random_efficient_su2_params(2, 2, rng))));
  return device;
}

SubsystemSpec spec_for(const ProductState& device, SubsystemKind kind, std::vector<int> qubits) {
  return {kind, qubits, device.reduced(qubits)};
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::InvalidArgument;
}

TEST(BuildReport, NoiselessPairReachesLowInfidelity) {
  const auto device = small_device(1);
  const auto records = sample_shadow(device, 6000, 2);
  const std::vector<SubsystemSpec> specs{spec_for(device, SubsystemKind::Pair, {0, 1})};
  const auto report = build_report(records, specs);
  ASSERT_EQ(report.entries.size(), 1u);
  const auto& e = report.entries[0];
  EXPECT_LE(e.infidelity_zecs, 0.01);
  EXPECT_LE(*e.trace_distance, 0.15);
  EXPECT_EQ(e.spectrum->size(), 4u);
}

TEST(BuildReport, ProductWithIdleQubitHasLowEntropy) {
  const auto device = small_device(3);
  const auto records = sample_shadow(device, 6000, 4);
  const std::vector<SubsystemSpec> specs{spec_for(device, SubsystemKind::PairPlusIdle, {0, 1, 2}),
                                         spec_for(device, SubsystemKind::PairPair, {0, 1, 2, 3})};
  const auto report = build_report(records, specs);
  EXPECT_LE(*report.entries[0].s_ab, 0.05);
  EXPECT_LE(*report.entries[1].s_ab, 0.05);
}

TEST(BuildReport, DeterministicAndNormalized) {
  const auto device = small_device(5);
  const auto records = sample_shadow(device, 3000, 6);
  const std::vector<SubsystemSpec> specs{
      spec_for(device, SubsystemKind::Pair, {0, 1}), spec_for(device, SubsystemKind::Pair, {1, 2}),
      spec_for(device, SubsystemKind::PairPlusIdle, {0, 1, 2}), spec_for(device, SubsystemKind::PairPlusIdle, {2, 3, 1}),
      spec_for(device, SubsystemKind::PairPair, {0, 1, 2, 3})};
  const auto a = build_report(records, specs);
  const auto b = build_report(records, specs);
  EXPECT_EQ(a, b);
  for (auto kind : {SubsystemKind::Pair, SubsystemKind::PairPlusIdle, SubsystemKind::PairPair}) {
    double top = 0.0;
    for (const auto& e : a.entries)
      if (e.kind == kind) {
        EXPECT_GE(*e.s_ab_normalized, 0.0);
        EXPECT_LE(*e.s_ab_normalized, 1.0);
        top = std::max(top, *e.s_ab_normalized);
      }
    EXPECT_EQ(top, 1.0) << to_string(kind);
  }
}

TEST(NormalizeEntropies, GlobalPoolsLargerKinds) {
  DiagnosticReport r{EntropyNorm::Global, {}};
  r.entries.push_back({.kind = SubsystemKind::Pair, .qubits = {0, 1}, .s_ab = 0.5});
  r.entries.push_back({.kind = SubsystemKind::PairPlusIdle, .qubits = {0, 1, 2}, .s_ab = 0.1});
  r.entries.push_back({.kind = SubsystemKind::PairPair, .qubits = {0, 1, 2, 3}, .s_ab = 0.4});
  r.entries.push_back({.kind = SubsystemKind::PairPair, .qubits = {2, 3, 4, 5}});
  normalize_entropies(r);
  EXPECT_EQ(*r.entries[0].s_ab_normalized, 1.0);
  EXPECT_EQ(*r.entries[1].s_ab_normalized, 0.25);
  EXPECT_EQ(*r.entries[2].s_ab_normalized, 1.0);
  EXPECT_FALSE(r.entries[3].s_ab_normalized);
  r.entropy_norm = EntropyNorm::PerKind;
  normalize_entropies(r);
  EXPECT_EQ(*r.entries[1].s_ab_normalized, 1.0);
}

TEST(BuildReport, Errors) {
  const auto device = small_device(7);
  const auto records = sample_shadow(device, 10, 8);
  EXPECT_EQ(code_of([&] {
              const std::vector<SnapshotRecord> short_records{{"XY", "01", ""}};
              const std::vector<SubsystemSpec> wide{spec_for(device, SubsystemKind::Pair, {0, 3})};
              (void)build_report(short_records, wide);
            }),
            ErrorCode::CoverageError);
  EXPECT_EQ(code_of([&] {
              const std::vector<SubsystemSpec> s{spec_for(device, SubsystemKind::Pair, {0, 1})};
              (void)build_report(std::span(records).subspan(0, 0), s);
            }),
            ErrorCode::EmptyAccumulator);
  EXPECT_EQ(code_of([&] {
              const std::vector<SubsystemSpec> s{{SubsystemKind::Pair, {0, 1}, std::nullopt}};
              (void)build_report(records, s);
            }),
            ErrorCode::MissingReference);
  EXPECT_EQ(code_of([&] {
              const std::vector<SubsystemSpec> s{spec_for(device, SubsystemKind::PairPair, {0, 1, 2})};
              (void)build_report(records, s);
            }),
            ErrorCode::BadSubsystem);
}

TEST(BuildReport, MedianEntropyDoesNotGrowWithSnapshots) {
  std::vector<double> small, large;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    ProductState device(3);
    device.add_block({0}, run(Circuit(1, {Gate::ry(0, 0.3 + 0.1 * static_cast<double>(seed))})));
    device.add_block({1}, run(Circuit(1, {Gate::ry(0, 1.1)})));
    const std::vector<SubsystemSpec> specs{spec_for(device, SubsystemKind::Pair, {0, 1})};
    small.push_back(*build_report(sample_shadow(device, 1000, seed), specs).entries[0].s_ab);
    large.push_back(*build_report(sample_shadow(device, 10000, seed + 100), specs).entries[0].s_ab);
  }
  std::nth_element(small.begin(), small.begin() + 10, small.end());
  std::nth_element(large.begin(), large.begin() + 10, large.end());
  EXPECT_LE(large[10], small[10]);
}

TEST(EntanglementEntropy, PureFourQubitCutIsSymmetric) {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto cs = DensityOperator::unvalidated(testing::random_unit_trace_hermitian(16, rng, 0.1));
    const auto ze = zecs_project(cs);
    EXPECT_NEAR(entanglement_entropy(ze.rho_zecs, {0, 1}), entanglement_entropy(ze.rho_zecs, {2, 3}), 1e-6);
  }
}

// ---------------------------------------------------------------------------
// Non-local scan

TEST(NonlocalScan, InjectedCandidateIsFlaggedAndStrongest) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto s = testing::nonlocal_scenario(6, true, 6000, seed);
    const auto hits = nonlocal_scan(s.records, s.layout, s.targets, s.candidates);
    ASSERT_EQ(hits.size(), 6u);
    EXPECT_EQ(hits[0].candidate, (QubitPair{2, 3}));
    EXPECT_TRUE(hits[0].flagged) << "z " << hits[0].zscore;
    EXPECT_TRUE(hits[0].strongest);
    EXPECT_GT(hits[0].s_ij, 0.8);
    for (std::size_t j = 1; j < hits.size(); ++j) EXPECT_FALSE(hits[j].strongest);
  }
}

TEST(NonlocalScan, ZscoresAreStandardized) {
  const auto s = testing::nonlocal_scenario(6, false, 2000, 42);
  const auto hits = nonlocal_scan(s.records, s.layout, s.targets, s.candidates);
  double sum = 0.0, sq = 0.0;
  for (const auto& h : hits) {
    sum += h.zscore;
    sq += h.zscore * h.zscore;
  }
  EXPECT_NEAR(sum, 0.0, 1e-9);
  EXPECT_NEAR(sq / static_cast<double>(hits.size()), 1.0, 1e-9);
  EXPECT_EQ(std::count_if(hits.begin(), hits.end(), [](const auto& h) { return h.strongest; }), 1);
}

TEST(NonlocalScan, Errors) {
  const auto s = testing::nonlocal_scenario(4, false, 20, 1);
  EXPECT_EQ(code_of([&] {
              const std::vector<QubitPair> two{{2, 3}, {4, 5}};
              (void)nonlocal_scan(s.records, s.layout, s.targets, two);
            }),
            ErrorCode::InsufficientCandidates);
  const DeviceLayout coupled(10, {{0, 1}, {1, 2}, {2, 3}, {4, 5}, {6, 7}, {8, 9}});
  const std::vector<QubitPair> cands{{2, 3}, {4, 5}, {6, 7}, {8, 9}};
  EXPECT_EQ(code_of([&] { (void)nonlocal_scan(s.records, coupled, s.targets, cands); }),
            ErrorCode::AdjacencyViolation);
  const auto kept = uncoupled_candidates(coupled, {0, 1}, cands);
  EXPECT_EQ(kept, (std::vector<QubitPair>{{4, 5}, {6, 7}, {8, 9}}));
}

TEST(Zscore, ArchivedSummary) {
  EXPECT_NEAR(zscore(0.237, 0.113, 0.035), 3.542857142857143, 1e-12);
  EXPECT_EQ(zscore(0.5, 0.5, 0.0), 0.0);
}

}  // namespace
}  // namespace zecs

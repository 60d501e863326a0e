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

// Monte-Carlo comparison of perturbed states against their zero-entropy
// projections, over a grid of perturbation strengths.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "zecs/parallel.hpp"
#include "zecs/simulator.hpp"
#include "zecs/states.hpp"
#include "zecs/zero_entropy.hpp"

namespace zecs {

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

struct PerturbationPoint {
  double sigma = 0.0;
  std::size_t trials = 0;
  MeanStd infidelity_raw, infidelity_ze;
  MeanStd trace_distance_raw, trace_distance_ze;
  MeanStd concurrence_raw, concurrence_ze;
  /// Eigenvalue of the perturbed state whose eigenvector overlaps most with
  /// the reference state, and the largest of the remaining three.
  MeanStd aligned_eigenvalue, largest_other_eigenvalue;
  /// Trials in which the reference-aligned eigenvalue was not the largest.
  std::size_t dominance_swaps = 0;
};

namespace detail {

inline MeanStd mean_std(std::span<const double> xs) {
  MeanStd r;
  if (xs.empty()) return r;
  for (double x : xs) r.mean += x;
  r.mean /= static_cast<double>(xs.size());
  for (double x : xs) r.std += (x - r.mean) * (x - r.mean);
  r.std = std::sqrt(r.std / static_cast<double>(xs.size()));
  return r;
}

}  // namespace detail

/// Runs `trials` perturbations of the pure two-qubit state `rho0` for each
/// sigma. Trial t at grid index k draws from Rng(seed, k * 2^32 + t), so the
/// result is independent of worker count.
inline std::vector<PerturbationPoint> perturbation_study(const DensityOperator& rho0, std::span<const double> sigmas,
                                                         std::size_t trials, std::uint64_t seed) {
  if (rho0.n_qubits() != 2) throw Error(ErrorCode::WrongSize, "perturbation study needs a 2-qubit state");
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  const auto ref_eig = eigh(rho0.matrix());
  const std::vector<Complex> psi0 = ref_eig.eigenvector(0);

  std::vector<PerturbationPoint> out;
  for (std::size_t k = 0; k < sigmas.size(); ++k) {
    enum Metric { kInfRaw, kInfZe, kTdRaw, kTdZe, kConRaw, kConZe, kAligned, kOther, kSwap, kCount };
    std::vector<std::array<double, kCount>> rows(trials);
    parallel_for(trials, [&](std::size_t t) {
      Rng rng(seed, (static_cast<std::uint64_t>(k) << 32) + t);
      const DensityOperator rho = perturb_state(rho0, sigmas[k], rng);
      const ZecsResult ze = zecs_project(rho);
      const auto eig = eigh(rho.matrix());
      std::size_t aligned = 0;
      double best = -1.0;
      for (std::size_t j = 0; j < eig.eigenvalues.size(); ++j) {
        const double overlap = std::norm(inner(psi0, eig.eigenvector(j)));
        if (overlap > best) {
          best = overlap;
          aligned = j;
        }
      }
      double other = 0.0;
      for (std::size_t j = 0; j < eig.eigenvalues.size(); ++j)
        if (j != aligned) other = std::max(other, eig.eigenvalues[j]);
      auto& row = rows[t];
      row[kInfRaw] = 1.0 - fidelity(rho, rho0);
      row[kInfZe] = 1.0 - fidelity(ze.rho_zecs, rho0);
      row[kTdRaw] = trace_distance(rho, rho0);
      row[kTdZe] = trace_distance(ze.rho_zecs, rho0);
      row[kConRaw] = concurrence(rho);
      row[kConZe] = concurrence(ze.rho_zecs);
      row[kAligned] = eig.eigenvalues[aligned];
      row[kOther] = other;
      row[kSwap] = aligned != 0 ? 1.0 : 0.0;
    });

    auto column = [&](Metric m) {
      std::vector<double> c(trials);
      for (std::size_t t = 0; t < trials; ++t) c[t] = rows[t][m];
      return detail::mean_std(c);
    };
    PerturbationPoint p;
    p.sigma = sigmas[k];
    p.trials = trials;
    p.infidelity_raw = column(kInfRaw);
    p.infidelity_ze = column(kInfZe);
    p.trace_distance_raw = column(kTdRaw);
    p.trace_distance_ze = column(kTdZe);
    p.concurrence_raw = column(kConRaw);
    p.concurrence_ze = column(kConZe);
    p.aligned_eigenvalue = column(kAligned);
    p.largest_other_eigenvalue = column(kOther);
    for (const auto& row : rows) p.dominance_swaps += row[kSwap] != 0.0;
    out.push_back(p);
  }
  return out;
}

}  // namespace zecs

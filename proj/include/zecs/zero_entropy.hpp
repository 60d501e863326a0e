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

// Zero-entropy projection of a classical-shadow estimate.
//
// rho_cs = V diag(lambda) V^dagger with |lambda_1| >= |lambda_2| >= ...
// The projection keeps only the eigenvector psi_1 of the largest |lambda|:
//
//     rho_zecs = |psi_1><psi_1|
//
// which is PSD, unit trace and pure by construction. lambda_1 * rho_zecs is
// the best rank-1 Hermitian approximation of rho_cs in Frobenius norm, with
// residual sqrt(sum_{k>=2} lambda_k^2).

#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <vector>

#include "zecs/error.hpp"
#include "zecs/qmat.hpp"
#include "zecs/states.hpp"

namespace zecs {

struct ZecsResult {
  DensityOperator rho_zecs;
  /// Signed dominant eigenvalue of the input.
  double lambda_top = 0.0;
  /// |lambda| of the input, descending.
  std::vector<double> spectrum;
  double spectral_gap = 0.0;
  bool degenerate_flag = false;
  /// Set when the dominant eigenvalue is negative (severe sampling noise).
  bool negative_top = false;
  /// FNV-1a hash of the input matrix bytes, ties the result to its source.
  std::uint64_t source_fingerprint = 0;
};

namespace detail {

inline std::uint64_t fingerprint(const CMatrix& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const Complex& v : m.data()) {
    const double parts[2] = {v.real(), v.imag()};
    unsigned char bytes[sizeof parts];
    std::memcpy(bytes, parts, sizeof parts);
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

}  // namespace detail

inline constexpr double kZecsTraceTol = 1e-6;
inline constexpr double kDegeneracyRelTol = 1e-6;

inline ZecsResult zecs_project(const DensityOperator& rho_cs) {
  const CMatrix& m = rho_cs.matrix();
  if (m.dim() < 2) throw Error(ErrorCode::InvalidArgument, "projection needs dim >= 2");
  const double tr_err = std::abs(m.trace() - Complex(1.0));
  if (tr_err > kZecsTraceTol) {
    throw Error(ErrorCode::NotUnitTrace, "input trace deviates from 1 by " + std::to_string(tr_err));
  }
  const auto eig = eigh(m);

  std::vector<double> spectrum;
  spectrum.reserve(eig.eigenvalues.size());
  for (double l : eig.eigenvalues) spectrum.push_back(std::abs(l));
  ZecsResult r{.rho_zecs = DensityOperator::pure(eig.eigenvector(0)), .lambda_top = eig.eigenvalues[0],
               .spectrum = std::move(spectrum)};
  r.spectral_gap = r.spectrum[0] - r.spectrum[1];
  r.degenerate_flag = r.spectral_gap < kDegeneracyRelTol * r.spectrum[0];
  r.negative_top = r.lambda_top < 0.0;
  r.source_fingerprint = detail::fingerprint(m);
  return r;
}

/// ||lambda_1 rho_zecs - rho_cs||_F, the Eckart-Young residual of the rank-1
/// truncation. Throws Mismatch if `result` was not computed from `rho_cs`.
inline double eckart_young_residual(const DensityOperator& rho_cs, const ZecsResult& result) {
  if (detail::fingerprint(rho_cs.matrix()) != result.source_fingerprint) {
    throw Error(ErrorCode::Mismatch, "projection result was derived from a different operator");
  }
  return frobenius_distance(result.rho_zecs.matrix() * result.lambda_top, rho_cs.matrix());
}

/// sqrt(sum_{k>=2} lambda_k^2) from the stored spectrum.
inline double tail_norm(const ZecsResult& result) {
  double s = 0.0;
  for (std::size_t k = 1; k < result.spectrum.size(); ++k) s += result.spectrum[k] * result.spectrum[k];
  return std::sqrt(s);
}

}  // namespace zecs

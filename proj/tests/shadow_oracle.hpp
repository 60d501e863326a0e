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

// Exhaustive-enumeration and sampling-rate oracles for the shadow channel.

#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "zecs/shadow.hpp"

namespace zecs::testing {

/// Measurement rotation written out independently of the simulator tables:
/// X -> H, Y -> H S^dagger, Z -> I.
inline CMatrix measurement_rotation(char basis) {
  const double r = 1.0 / std::numbers::sqrt2;
  const CMatrix h = CMatrix::from_rows({{r, r}, {r, -r}});
  const CMatrix s_dag = CMatrix::from_rows({{1.0, 0.0}, {0.0, Complex(0.0, -1.0)}});
  if (basis == 'X') return h;
  if (basis == 'Y') return h * s_dag;
  return CMatrix::identity(2);
}

/// Average of inverted snapshots over all 3^n basis strings and 2^n outcomes,
/// each weighted by its exact probability (1/3^n) <b|U rho U^dagger|b>.
inline CMatrix exact_shadow_mean(const CMatrix& rho) {
  const int n = qubit_count(rho.dim());
  const std::size_t dim = rho.dim();
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) all[static_cast<std::size_t>(q)] = q;
  std::size_t n_bases = 1;
  for (int q = 0; q < n; ++q) n_bases *= 3;
  CMatrix mean(dim);
  for (std::size_t code = 0; code < n_bases; ++code) {
    std::string bases;
    CMatrix u = CMatrix::identity(1);
    for (std::size_t c = code, q = 0; q < static_cast<std::size_t>(n); ++q, c /= 3) {
      bases.push_back("XYZ"[c % 3]);
      u = kron(u, measurement_rotation(bases.back()));
    }
    const CMatrix rotated = u * rho * u.adjoint();
    for (std::size_t b = 0; b < dim; ++b) {
      std::string bits;
      for (int q = 0; q < n; ++q) bits.push_back(((b >> (n - 1 - q)) & 1U) ? '1' : '0');
      const double p = rotated(b, b).real() / static_cast<double>(n_bases);
      mean += invert_snapshot(SnapshotRecord{bases, bits, ""}, all) * p;
    }
  }
  return mean;
}

/// Least-squares slope of log(mean Frobenius error) against log(N) for
/// N = base, 10 base, 100 base, averaging over `seeds` sample streams.
inline double shadow_error_slope(const StateVector& psi, const CMatrix& truth, const std::vector<int>& subset,
                                 int seeds, std::size_t base) {
  std::vector<double> xs, ys;
  for (std::size_t n = base; n <= 100 * base; n *= 10) {
    double total = 0.0;
    for (int s = 0; s < seeds; ++s) {
      const auto records = sample_shadow(psi, n, 1000 * n + static_cast<std::uint64_t>(s));
      total += frobenius_distance(accumulate_records(records, subset).rho_cs().matrix(), truth);
    }
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(total / seeds));
  }
  const double mx = (xs[0] + xs[1] + xs[2]) / 3.0;
  const double my = (ys[0] + ys[1] + ys[2]) / 3.0;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace zecs::testing

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

// Classical-shadow inversion and aggregation.
//
// A record measured qubit j in basis P_j with outcome b_j. Its snapshot
// restricted to a qubit subset S is the Kronecker product over S (in S order)
// of the single-qubit factors 3 U^dagger |b><b| U - I. Because the inverse
// channel factorizes per qubit, marginals of any subset are obtained from the
// selected factors alone; the full-register snapshot is never formed.

#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "zecs/error.hpp"
#include "zecs/qmat.hpp"
#include "zecs/simulator.hpp"
#include "zecs/states.hpp"

namespace zecs {

namespace detail {

inline std::size_t basis_slot(char basis) {
  switch (basis) {
    case 'X': return 0;
    case 'Y': return 1;
    case 'Z': return 2;
    default: throw Error(ErrorCode::BadBasisChar, std::string("basis character '") + basis + "'");
  }
}

inline std::size_t bit_slot(char bit) {
  switch (bit) {
    case '0': return 0;
    case '1': return 1;
    default: throw Error(ErrorCode::BadBitChar, std::string("bit character '") + bit + "'");
  }
}

// Row-major single-qubit snapshot factors indexed [basis][bit].
//   X: 3|+-><+-| - I,  Y: 3|+-i><+-i| - I,  Z: 3|b><b| - I
inline const std::array<std::array<std::array<Complex, 4>, 2>, 3>& snapshot_factors() {
  static const std::array<std::array<std::array<Complex, 4>, 2>, 3> table{{
      {{{0.5, 1.5, 1.5, 0.5}, {0.5, -1.5, -1.5, 0.5}}},
      {{{0.5, Complex(0.0, -1.5), Complex(0.0, 1.5), 0.5}, {0.5, Complex(0.0, 1.5), Complex(0.0, -1.5), 0.5}}},
      {{{2.0, 0.0, 0.0, -1.0}, {-1.0, 0.0, 0.0, 2.0}}},
  }};
  return table;
}

// Adds weight * (factor_0 (x) factor_1 (x) ...) into `sum`.
inline void add_kron_of_factors(CMatrix& sum, std::span<const std::array<Complex, 4>* const> factors,
                                double weight = 1.0) {
  const std::size_t k = factors.size();
  const std::size_t dim = std::size_t{1} << k;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      Complex v = weight;
      for (std::size_t f = 0; f < k; ++f) {
        const std::size_t bi = (i >> (k - 1 - f)) & 1U;
        const std::size_t bj = (j >> (k - 1 - f)) & 1U;
        v *= (*factors[f])[2 * bi + bj];
      }
      sum(i, j) += v;
    }
}

inline std::vector<const std::array<Complex, 4>*> factors_for(const SnapshotRecord& record,
                                                               std::span<const int> subset) {
  if (record.bases.size() != record.bits.size()) {
    throw Error(ErrorCode::InvalidArgument, "record bases/bits length mismatch");
  }
  const auto& table = snapshot_factors();
  std::vector<const std::array<Complex, 4>*> factors;
  factors.reserve(subset.size());
  for (int q : subset) {
    if (q < 0 || static_cast<std::size_t>(q) >= record.bases.size()) {
      throw Error(ErrorCode::SubsetNotCovered, "qubit " + std::to_string(q) + " not in a record of length " +
                                                   std::to_string(record.bases.size()));
    }
    const auto b = basis_slot(record.bases[static_cast<std::size_t>(q)]);
    const auto o = bit_slot(record.bits[static_cast<std::size_t>(q)]);
    factors.push_back(&table[b][o]);
  }
  return factors;
}

}  // namespace detail

/// Inverted snapshot of `record` on `qubit_subset`, in subset order.
inline CMatrix invert_snapshot(const SnapshotRecord& record, std::span<const int> qubit_subset) {
  const auto factors = detail::factors_for(record, qubit_subset);
  CMatrix m(std::size_t{1} << qubit_subset.size());
  detail::add_kron_of_factors(m, factors);
  return m;
}

inline CMatrix invert_snapshot(const SnapshotRecord& record, std::initializer_list<int> qubit_subset) {
  return invert_snapshot(record, std::span<const int>(qubit_subset.begin(), qubit_subset.size()));
}

/// Running sum of inverted snapshots over a fixed qubit subset.
///
/// Snapshot entries are dyadic rationals, so the sum is exact in double
/// precision for any realistic record count; merging shards in any order
/// reproduces sequential accumulation bit for bit.
class ShadowAccumulator {
 public:
  explicit ShadowAccumulator(std::vector<int> qubit_subset)
      : subset_(std::move(qubit_subset)), sum_(std::size_t{1} << subset_.size()) {
    if (subset_.empty() || subset_.size() > 10) {
      throw Error(ErrorCode::InvalidArgument, "subset size must be in [1, 10]");
    }
    for (std::size_t a = 0; a < subset_.size(); ++a) {
      if (subset_[a] < 0) throw Error(ErrorCode::IndexOutOfRange, "negative qubit index");
      for (std::size_t b = a + 1; b < subset_.size(); ++b)
        if (subset_[a] == subset_[b]) throw Error(ErrorCode::InvalidArgument, "repeated qubit in subset");
    }
  }

  const std::vector<int>& qubit_subset() const noexcept { return subset_; }
  std::size_t count() const noexcept { return count_; }
  const CMatrix& sum_matrix() const noexcept { return sum_; }

  ShadowAccumulator& accumulate(const SnapshotRecord& record) {
    const auto factors = detail::factors_for(record, subset_);
    detail::add_kron_of_factors(sum_, factors);
    ++count_;
    return *this;
  }

  ShadowAccumulator& accumulate(std::span<const SnapshotRecord> records) {
    for (const auto& r : records) accumulate(r);
    return *this;
  }

  ShadowAccumulator& merge(const ShadowAccumulator& other) {
    if (other.subset_ != subset_) throw Error(ErrorCode::SubsetMismatch, "accumulators cover different subsets");
    sum_ += other.sum_;
    count_ += other.count_;
    return *this;
  }

  /// rho_cs = sum / N. Hermitian and unit trace but not necessarily PSD.
  DensityOperator rho_cs() const {
    if (count_ == 0) throw Error(ErrorCode::EmptyAccumulator, "no records absorbed");
    return DensityOperator::unvalidated(sum_ / static_cast<double>(count_));
  }

  friend bool operator==(const ShadowAccumulator&, const ShadowAccumulator&) = default;

 private:
  std::vector<int> subset_;
  std::size_t count_ = 0;
  CMatrix sum_;
};

inline ShadowAccumulator accumulate(ShadowAccumulator acc, const SnapshotRecord& record) {
  acc.accumulate(record);
  return acc;
}

inline ShadowAccumulator merge(ShadowAccumulator a, const ShadowAccumulator& b) {
  a.merge(b);
  return a;
}

inline DensityOperator rho_cs(const ShadowAccumulator& acc) { return acc.rho_cs(); }

/// Accumulates `records` over `subset`, sharded across workers and merged.
inline ShadowAccumulator accumulate_records(std::span<const SnapshotRecord> records, std::vector<int> subset) {
  constexpr std::size_t kShard = 8192;
  const std::size_t shards = (records.size() + kShard - 1) / kShard;
  std::vector<ShadowAccumulator> parts(shards, ShadowAccumulator(subset));
  parallel_for(shards, [&](std::size_t s) {
    const std::size_t begin = s * kShard;
    const std::size_t end = std::min(records.size(), begin + kShard);
    parts[s].accumulate(records.subspan(begin, end - begin));
  });
  ShadowAccumulator total(std::move(subset));
  for (const auto& p : parts) total.merge(p);
  return total;
}

}  // namespace zecs

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

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zecs/error.hpp"
#include "zecs/qmat.hpp"

namespace zecs {

/// Hermitian operator on n qubits. `validated()` is true only when the matrix
/// passed the unit-trace and PSD checks; classical-shadow estimates are
/// carried unvalidated because they are routinely indefinite.
class DensityOperator {
 public:
  static constexpr double kHermitianTol = 1e-8;
  static constexpr double kTraceTol = 1e-8;
  static constexpr double kPsdTol = 1e-8;

  /// Unvalidated operator; only Hermiticity and dimension are enforced.
  static DensityOperator unvalidated(CMatrix m) {
    DensityOperator d(std::move(m));
    d.validated_ = false;
    return d;
  }

  /// Validated density operator; throws NotValidDensity on trace/PSD failure.
  static DensityOperator validated(CMatrix m) {
    DensityOperator d(std::move(m));
    const double tr_err = std::abs(d.matrix_.trace() - Complex(1.0));
    if (tr_err > kTraceTol) {
      throw Error(ErrorCode::NotValidDensity, "trace deviates from 1 by " + std::to_string(tr_err));
    }
    // eigenvalues are sorted by |lambda|, so scan for the smallest signed one
    double lowest = 0.0;
    for (double l : eigh(d.matrix_).eigenvalues) lowest = std::min(lowest, l);
    if (lowest < -kPsdTol) {
      throw Error(ErrorCode::NotValidDensity, "minimum eigenvalue " + std::to_string(lowest));
    }
    d.validated_ = true;
    return d;
  }

  /// |psi><psi| for a unit vector (normalized here).
  static DensityOperator pure(std::span<const Complex> psi) {
    double norm2 = 0.0;
    for (const auto& a : psi) norm2 += std::norm(a);
    if (norm2 <= 0.0) throw Error(ErrorCode::InvalidArgument, "zero state vector");
    std::vector<Complex> v(psi.begin(), psi.end());
    for (auto& a : v) a /= std::sqrt(norm2);
    DensityOperator d(CMatrix::outer(v));
    d.validated_ = true;
    return d;
  }

  static DensityOperator maximally_mixed(int n_qubits) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    DensityOperator d(CMatrix::identity(dim) / static_cast<double>(dim));
    d.validated_ = true;
    return d;
  }

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return matrix_.dim(); }
  const CMatrix& matrix() const noexcept { return matrix_; }
  bool is_validated() const noexcept { return validated_; }

  DensityOperator reduced(std::span<const int> keep) const {
    DensityOperator d(partial_trace(matrix_, keep, n_qubits_));
    d.validated_ = validated_;
    return d;
  }

  friend DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
    DensityOperator d(kron(a.matrix_, b.matrix_));
    d.validated_ = a.validated_ && b.validated_;
    return d;
  }

 private:
  explicit DensityOperator(CMatrix m) : n_qubits_(qubit_count(m.dim())), matrix_(std::move(m)) {
    const double dev = matrix_.hermitian_deviation();
    if (dev > kHermitianTol) {
      throw Error(ErrorCode::NotHermitian, "density operator deviates from Hermitian by " + std::to_string(dev));
    }
  }

  int n_qubits_;
  CMatrix matrix_;
  bool validated_ = false;
};

// ---------------------------------------------------------------------------
// Metrics

namespace detail {

inline void require_same_dim(const DensityOperator& a, const DensityOperator& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimMismatch, std::to_string(a.n_qubits()) + " vs " + std::to_string(b.n_qubits()) +
                                            " qubits");
  }
}

// Rank-1 factor sqrt(lambda)|v> if the PSD spectrum has a single nonzero
// eigenvalue, else empty.
inline std::vector<Complex> rank_one_factor(const EigenDecomposition& eig) {
  const double top = eig.eigenvalues.front();
  if (top <= 0.0) return {};
  for (std::size_t k = 1; k < eig.eigenvalues.size(); ++k)
    if (std::abs(eig.eigenvalues[k]) > 1e-12 * top) return {};
  auto v = eig.eigenvector(0);
  for (auto& x : v) x *= std::sqrt(top);
  return v;
}

}  // namespace detail

/// Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2.
///
/// Both inputs are clamped to their PSD part (negative eigenvalues zeroed, no
/// renormalization) before evaluation, so indefinite classical-shadow
/// estimates yield a well-defined value; the clamped magnitude is added to
/// `clamp`. When either clamped input is rank-1 the fast path <psi|rho|psi>
/// is used.
inline double fidelity(const DensityOperator& a, const DensityOperator& b, ClampCounter& clamp) {
  detail::require_same_dim(a, b);
  const auto eig_a = eigh(a.matrix());
  const auto eig_b = eigh(b.matrix());
  for (double l : eig_a.eigenvalues) clamp.record(l);
  for (double l : eig_b.eigenvalues) clamp.record(l);
  auto positive = [](double l) { return l > 0.0 ? l : 0.0; };
  const CMatrix pa = eig_a.reconstruct(positive);
  const CMatrix pb = eig_b.reconstruct(positive);

  auto expectation = [](std::span<const Complex> psi, const CMatrix& rho) {
    return inner(psi, rho * psi).real();
  };
  if (auto psi = detail::rank_one_factor(eig_a); !psi.empty()) return std::max(0.0, expectation(psi, pb));
  if (auto psi = detail::rank_one_factor(eig_b); !psi.empty()) return std::max(0.0, expectation(psi, pa));

  const CMatrix root_a = eig_a.reconstruct([](double l) { return l > 0.0 ? std::sqrt(l) : 0.0; });
  const CMatrix inner_m = root_a * pb * root_a;
  double tr = 0.0;
  for (double l : eigh(inner_m, {.hermitian_tol = 1e-6}).eigenvalues) tr += l > 0.0 ? std::sqrt(l) : 0.0;
  return tr * tr;
}

inline double fidelity(const DensityOperator& a, const DensityOperator& b) {
  ClampCounter ignored;
  return fidelity(a, b, ignored);
}

/// D = 1/2 tr|a - b|
inline double trace_distance(const DensityOperator& a, const DensityOperator& b) {
  detail::require_same_dim(a, b);
  double s = 0.0;
  for (double l : eigh(a.matrix() - b.matrix()).eigenvalues) s += std::abs(l);
  return 0.5 * s;
}

/// Spin-flip operator used to form rho~ = F conj(rho) F in the concurrence.
/// PauliY is the Wootters spin flip; PauliX is the literal X (x) X variant,
/// which agrees on Bell-diagonal states but is not zero on every product
/// state (e.g. |++>).
enum class SpinFlip { PauliY, PauliX };

/// Two-qubit concurrence max(0, l0 - l1 - l2 - l3) over the descending
/// eigenvalues of R = sqrt(sqrt(rho) rho~ sqrt(rho)). Conjugation is
/// elementwise in the computational basis; rho is clamped to its PSD part.
inline double concurrence(const DensityOperator& rho, ClampCounter& clamp, SpinFlip flip = SpinFlip::PauliY) {
  if (rho.n_qubits() != 2) {
    throw Error(ErrorCode::WrongSize, "concurrence needs 2 qubits, got " + std::to_string(rho.n_qubits()));
  }
  const auto eig = eigh(rho.matrix());
  for (double l : eig.eigenvalues) clamp.record(l);
  const CMatrix root = eig.reconstruct([](double l) { return l > 0.0 ? std::sqrt(l) : 0.0; });
  const CMatrix pc = eig.reconstruct([](double l) { return l > 0.0 ? l : 0.0; }).conjugate();

  // Both flips are anti-diagonal: F|i> = sign_i |3 - i>.
  constexpr double kYSigns[4] = {-1.0, 1.0, 1.0, -1.0};
  CMatrix flipped(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const double sign = flip == SpinFlip::PauliY ? kYSigns[i] * kYSigns[j] : 1.0;
      flipped(i, j) = sign * pc(3 - i, 3 - j);
    }

  const CMatrix inner_m = root * flipped * root;
  std::vector<double> r;
  for (double l : eigh(inner_m, {.hermitian_tol = 1e-6}).eigenvalues) r.push_back(l > 0.0 ? std::sqrt(l) : 0.0);
  std::sort(r.begin(), r.end(), std::greater<>());
  return std::max(0.0, r[0] - r[1] - r[2] - r[3]);
}

inline double concurrence(const DensityOperator& rho, SpinFlip flip = SpinFlip::PauliY) {
  ClampCounter ignored;
  return concurrence(rho, ignored, flip);
}

/// Shannon entropy in bits of a spectrum after clamping to [0, 1] and
/// renormalizing to unit sum; 0 log 0 := 0.
inline double spectral_entropy_bits(std::span<const double> eigenvalues) {
  std::vector<double> p;
  double total = 0.0;
  for (double l : eigenvalues) {
    const double c = std::clamp(l, 0.0, 1.0);
    p.push_back(c);
    total += c;
  }
  if (total <= 0.0) return 0.0;
  double s = 0.0;
  for (double x : p) {
    const double q = x / total;
    if (q > 0.0) s -= q * std::log2(q);
  }
  return std::max(0.0, s);
}

/// Von Neumann entropy (bits) of the marginal on `subsystem_a`.
inline double entanglement_entropy(const DensityOperator& rho, std::span<const int> subsystem_a) {
  const int n = rho.n_qubits();
  if (subsystem_a.empty() || static_cast<int>(subsystem_a.size()) >= n) {
    throw Error(ErrorCode::BadSubsystem, "subsystem must be a proper nonempty subset of " + std::to_string(n) +
                                             " qubits");
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int q : subsystem_a) {
    if (q < 0 || q >= n || seen[static_cast<std::size_t>(q)]) {
      throw Error(ErrorCode::BadSubsystem, "invalid or repeated qubit " + std::to_string(q));
    }
    seen[static_cast<std::size_t>(q)] = true;
  }
  const CMatrix marginal = partial_trace(rho.matrix(), subsystem_a, n);
  const auto eig = eigh(marginal);
  return spectral_entropy_bits(eig.eigenvalues);
}

inline double entanglement_entropy(const DensityOperator& rho, std::initializer_list<int> subsystem_a) {
  return entanglement_entropy(rho, std::span<const int>(subsystem_a.begin(), subsystem_a.size()));
}

}  // namespace zecs

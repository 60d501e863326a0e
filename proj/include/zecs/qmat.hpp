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

// Dense complex linear algebra for small qubit registers (dim <= 2^10).
//
// Index convention: qubit 0 is the most significant bit of a basis index, so
// for an n-qubit register qubit q contributes the bit (1 << (n - 1 - q)).

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "zecs/error.hpp"

namespace zecs {

using Complex = std::complex<double>;

/// Square complex matrix, row-major.
class CMatrix {
 public:
  CMatrix() : CMatrix(1) {}

  explicit CMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
    if (dim == 0) throw Error(ErrorCode::InvalidArgument, "matrix dimension must be >= 1");
  }

  CMatrix(std::size_t dim, std::vector<Complex> entries) : dim_(dim), data_(std::move(entries)) {
    if (dim == 0) throw Error(ErrorCode::InvalidArgument, "matrix dimension must be >= 1");
    if (data_.size() != dim * dim) {
      throw Error(ErrorCode::DimMismatch, "expected " + std::to_string(dim * dim) + " entries, got " +
                                              std::to_string(data_.size()));
    }
  }

  /// Row-major nested initializer, e.g. CMatrix::from_rows({{0, 1}, {1, 0}}).
  static CMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    CMatrix m(rows.size());
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != m.dim_) throw Error(ErrorCode::DimMismatch, "ragged row in from_rows");
      std::size_t j = 0;
      for (const auto& v : row) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  static CMatrix identity(std::size_t dim) {
    CMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static CMatrix diagonal(std::span<const double> values) {
    CMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  static CMatrix diagonal(std::initializer_list<double> values) {
    return diagonal(std::span<const double>(values.begin(), values.size()));
  }

  /// |v><v|
  static CMatrix outer(std::span<const Complex> v) {
    CMatrix m(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }
  std::span<const Complex> data() const noexcept { return data_; }
  std::span<Complex> data() noexcept { return data_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

  CMatrix adjoint() const {
    CMatrix r(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
  }

  CMatrix conjugate() const {
    CMatrix r(dim_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = std::conj(data_[k]);
    return r;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
  }

  /// max |m_ij - conj(m_ji)|
  double hermitian_deviation() const {
    double dev = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i; j < dim_; ++j)
        dev = std::max(dev, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return dev;
  }

  bool is_hermitian(double tol = 1e-8) const { return hermitian_deviation() <= tol; }

  CMatrix& operator+=(const CMatrix& o) {
    require_same_dim(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  CMatrix& operator-=(const CMatrix& o) {
    require_same_dim(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  CMatrix& operator*=(Complex s) {
    for (auto& v : data_) v *= s;
    return *this;
  }
  CMatrix& operator/=(Complex s) {
    for (auto& v : data_) v /= s;
    return *this;
  }

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
  friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
  friend CMatrix operator/(CMatrix a, Complex s) { return a /= s; }

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    a.require_same_dim(b);
    const std::size_t n = a.dim_;
    CMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  friend std::vector<Complex> operator*(const CMatrix& a, std::span<const Complex> v) {
    if (v.size() != a.dim_) throw Error(ErrorCode::DimMismatch, "matrix-vector dimension mismatch");
    std::vector<Complex> r(a.dim_);
    for (std::size_t i = 0; i < a.dim_; ++i) {
      Complex s = 0.0;
      for (std::size_t j = 0; j < a.dim_; ++j) s += a(i, j) * v[j];
      r[i] = s;
    }
    return r;
  }

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  void require_same_dim(const CMatrix& o) const {
    if (o.dim_ != dim_) {
      throw Error(ErrorCode::DimMismatch,
                  "dimension " + std::to_string(dim_) + " vs " + std::to_string(o.dim_));
    }
  }

  std::size_t dim_;
  std::vector<Complex> data_;
};

inline double frobenius_distance(const CMatrix& a, const CMatrix& b) { return (a - b).frobenius_norm(); }

inline Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

/// Number of qubits n with 2^n == dim, or throws.
inline int qubit_count(std::size_t dim) {
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  if ((std::size_t{1} << n) != dim) {
    throw Error(ErrorCode::DimMismatch, "dimension " + std::to_string(dim) + " is not a power of two");
  }
  return n;
}

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition

struct EigenDecomposition {
  /// Sorted by descending |lambda|; ties by descending signed lambda, then by
  /// lowest original diagonal position.
  std::vector<double> eigenvalues;
  /// Column k is the eigenvector of eigenvalues[k].
  CMatrix eigenvectors;

  std::vector<Complex> eigenvector(std::size_t k) const {
    std::vector<Complex> v(eigenvectors.dim());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = eigenvectors(i, k);
    return v;
  }

  /// V f(diag(lambda)) V^dagger
  template <class F>
  CMatrix reconstruct(F&& fn) const {
    const std::size_t n = eigenvectors.dim();
    CMatrix r(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double w = fn(eigenvalues[k]);
      if (w == 0.0) continue;
      for (std::size_t i = 0; i < n; ++i) {
        const Complex vi = eigenvectors(i, k) * w;
        if (vi == Complex{}) continue;
        for (std::size_t j = 0; j < n; ++j) r(i, j) += vi * std::conj(eigenvectors(j, k));
      }
    }
    return r;
  }

  CMatrix reconstruct() const {
    return reconstruct([](double x) { return x; });
  }
};

struct EighOptions {
  double hermitian_tol = 1e-8;
  double relative_tol = 1e-12;
  int max_sweeps = 100;
};

namespace detail {

inline double off_diagonal_norm(const CMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Fix the global phase of each eigenvector so that its first entry of
// maximal modulus is real and positive.
inline void normalize_phases(CMatrix& v) {
  const std::size_t n = v.dim();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double mag = std::abs(v(i, k));
      if (mag > best_mag * (1.0 + 1e-12)) {
        best_mag = mag;
        best = i;
      }
    }
    if (best_mag <= 0.0) continue;
    const Complex phase = std::conj(v(best, k)) / best_mag;
    for (std::size_t i = 0; i < n; ++i) v(i, k) *= phase;
  }
}

}  // namespace detail

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
inline EigenDecomposition eigh(const CMatrix& m, const EighOptions& opts = {}) {
  const std::size_t n = m.dim();
  if (n > 1024) throw Error(ErrorCode::Overflow, "eigh supports dim <= 1024");
  const double dev = m.hermitian_deviation();
  if (dev > opts.hermitian_tol) {
    throw Error(ErrorCode::NotHermitian, "max |m - m^dagger| entry = " + std::to_string(dev));
  }

  // Work on the exactly Hermitian part.
  CMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      a(i, j) = v;
      a(j, i) = std::conj(v);
    }
  }
  CMatrix v = CMatrix::identity(n);

  const double threshold = opts.relative_tol * m.frobenius_norm();
  int sweep = 0;
  while (detail::off_diagonal_norm(a) > threshold) {
    if (sweep++ >= opts.max_sweeps) {
      throw Error(ErrorCode::NoConvergence, "Jacobi did not converge in " + std::to_string(opts.max_sweeps) +
                                                " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();

        // Phase-rotate to a real symmetric 2x2 block, then apply a real
        // Jacobi rotation. J = diag(1, e^{-i phi}) * [[c, s], [-s, c]].
        const Complex e = apq / mag;
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex jpp = c;
        const Complex jpq = s;
        const Complex jqp = -s * std::conj(e);
        const Complex jqq = c * std::conj(e);

        for (std::size_t k = 0; k < n; ++k) {  // A <- A J
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- J^dagger A
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {  // V <- V J
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const double lx = a(x, x).real();
    const double ly = a(y, y).real();
    if (std::abs(lx) != std::abs(ly)) return std::abs(lx) > std::abs(ly);
    return lx > ly;
  });

  EigenDecomposition out{std::vector<double>(n), CMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  detail::normalize_phases(out.eigenvectors);
  return out;
}

// ---------------------------------------------------------------------------
// Tensor structure

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  if (da > (std::size_t{1} << 20) / db) throw Error(ErrorCode::Overflow, "kron dimension exceeds 2^20");
  CMatrix r(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) r(i * db + k, j * db + l) = aij * b(k, l);
    }
  return r;
}

/// Reduced operator on the qubits in `keep`, traced over all others. The
/// result's qubit order follows `keep` (keep[0] becomes the most significant
/// qubit), so a permuted keep list also permutes the tensor factors.
inline CMatrix partial_trace(const CMatrix& m, std::span<const int> keep, int n_qubits) {
  if (n_qubits < 0 || n_qubits > 20 || m.dim() != (std::size_t{1} << n_qubits)) {
    throw Error(ErrorCode::DimMismatch, "matrix dim " + std::to_string(m.dim()) + " is not 2^" +
                                            std::to_string(n_qubits));
  }
  std::vector<bool> kept(static_cast<std::size_t>(n_qubits), false);
  for (int q : keep) {
    if (q < 0 || q >= n_qubits) throw Error(ErrorCode::IndexOutOfRange, "qubit " + std::to_string(q));
    if (kept[static_cast<std::size_t>(q)]) {
      throw Error(ErrorCode::IndexOutOfRange, "duplicate qubit " + std::to_string(q));
    }
    kept[static_cast<std::size_t>(q)] = true;
  }
  std::vector<int> traced;
  for (int q = 0; q < n_qubits; ++q)
    if (!kept[static_cast<std::size_t>(q)]) traced.push_back(q);

  auto offsets = [n_qubits](std::span<const int> qubits) {
    const std::size_t count = std::size_t{1} << qubits.size();
    std::vector<std::size_t> off(count, 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
      for (std::size_t b = 0; b < qubits.size(); ++b) {
        if ((idx >> (qubits.size() - 1 - b)) & 1U) off[idx] |= std::size_t{1} << (n_qubits - 1 - qubits[b]);
      }
    }
    return off;
  };
  const auto keep_off = offsets(keep);
  const auto trace_off = offsets(traced);

  CMatrix r(keep_off.size());
  for (std::size_t i = 0; i < keep_off.size(); ++i)
    for (std::size_t j = 0; j < keep_off.size(); ++j) {
      Complex s = 0.0;
      for (std::size_t t : trace_off) s += m(keep_off[i] | t, keep_off[j] | t);
      r(i, j) = s;
    }
  return r;
}

inline CMatrix partial_trace(const CMatrix& m, std::initializer_list<int> keep, int n_qubits) {
  return partial_trace(m, std::span<const int>(keep.begin(), keep.size()), n_qubits);
}

// ---------------------------------------------------------------------------
// Functions of Hermitian matrices

/// Accumulates how much negative spectrum was clamped away.
struct ClampCounter {
  /// Eigenvalues below this are reported; those in [threshold, 0) clamp silently.
  static constexpr double kSilentThreshold = -1e-10;
  /// Sum of |lambda| over reported (more negative than threshold) eigenvalues.
  double magnitude = 0.0;
  std::size_t count = 0;

  void record(double lambda) {
    if (lambda < kSilentThreshold) {
      magnitude += -lambda;
      ++count;
    }
  }
};

/// PSD square root via eigendecomposition; negative eigenvalues clamp to zero.
inline CMatrix mat_sqrt_psd(const CMatrix& m, ClampCounter& clamp) {
  const auto eig = eigh(m);
  for (double l : eig.eigenvalues) clamp.record(l);
  return eig.reconstruct([](double l) { return l > 0.0 ? std::sqrt(l) : 0.0; });
}

inline CMatrix mat_sqrt_psd(const CMatrix& m) {
  ClampCounter ignored;
  return mat_sqrt_psd(m, ignored);
}

/// Nearest-in-spectrum PSD matrix: negative eigenvalues set to zero, no
/// renormalization.
inline CMatrix clamp_psd(const CMatrix& m, ClampCounter& clamp) {
  const auto eig = eigh(m);
  bool any_negative = false;
  for (double l : eig.eigenvalues) {
    clamp.record(l);
    any_negative = any_negative || l < 0.0;
  }
  if (!any_negative) return m;
  return eig.reconstruct([](double l) { return l > 0.0 ? l : 0.0; });
}

/// |m| = sqrt(m^dagger m) for Hermitian m, i.e. V |Lambda| V^dagger.
inline CMatrix mat_abs(const CMatrix& m) {
  return eigh(m).reconstruct([](double l) { return std::abs(l); });
}

}  // namespace zecs

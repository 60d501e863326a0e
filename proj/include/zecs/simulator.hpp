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

// State-vector simulation of layered rotation/CNOT circuits, Pauli-basis
// shadow sampling, and the random Pauli perturbation noise model.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zecs/error.hpp"
#include "zecs/parallel.hpp"
#include "zecs/qmat.hpp"
#include "zecs/rng.hpp"
#include "zecs/states.hpp"

namespace zecs {

enum class GateKind { RY, RZ, CNOT };

struct Gate {
  GateKind kind;
  int target;
  std::optional<int> control;
  std::optional<double> angle;

  static Gate ry(int q, double theta) { return {GateKind::RY, q, std::nullopt, theta}; }
  static Gate rz(int q, double theta) { return {GateKind::RZ, q, std::nullopt, theta}; }
  static Gate cnot(int control, int target) { return {GateKind::CNOT, target, control, std::nullopt}; }

  friend bool operator==(const Gate&, const Gate&) = default;
};

class Circuit {
 public:
  explicit Circuit(int n_qubits, std::vector<Gate> gates = {}) : n_qubits_(n_qubits) {
    if (n_qubits < 1) throw Error(ErrorCode::InvalidArgument, "circuit needs at least one qubit");
    for (auto& g : gates) add(g);
  }

  Circuit& add(const Gate& g) {
    auto valid = [this](int q) { return q >= 0 && q < n_qubits_; };
    if (!valid(g.target)) throw Error(ErrorCode::IndexOutOfRange, "gate target " + std::to_string(g.target));
    if (g.kind == GateKind::CNOT) {
      if (!g.control || !valid(*g.control) || *g.control == g.target) {
        throw Error(ErrorCode::InvalidArgument, "CNOT needs a distinct valid control");
      }
    } else if (!g.angle) {
      throw Error(ErrorCode::InvalidArgument, "rotation gate without angle");
    }
    gates_.push_back(g);
    return *this;
  }

  int n_qubits() const noexcept { return n_qubits_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }

  /// Gates reversed with rotation angles negated (CNOT is self-inverse).
  Circuit inverse() const {
    Circuit inv(n_qubits_);
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
      Gate g = *it;
      if (g.angle) g.angle = -*g.angle;
      inv.gates_.push_back(g);
    }
    return inv;
  }

 private:
  int n_qubits_;
  std::vector<Gate> gates_;
};

/// Layered hardware-efficient ansatz with 4 * reps * n_qubits parameters.
/// Each repetition is: RY column, RZ column, CNOT ladder (i -> i+1), RY column,
/// RZ column. Parameters are consumed in gate order.
inline Circuit build_efficient_su2(int n_qubits, int reps, std::span<const double> params) {
  if (n_qubits < 1) throw Error(ErrorCode::InvalidArgument, "n_qubits must be >= 1");
  if (reps < 1) throw Error(ErrorCode::InvalidArgument, "reps must be >= 1");
  const std::size_t expected = 4 * static_cast<std::size_t>(reps) * static_cast<std::size_t>(n_qubits);
  if (params.size() != expected) {
    throw Error(ErrorCode::BadParamCount, "expected " + std::to_string(expected) + " parameters, got " +
                                              std::to_string(params.size()));
  }
  Circuit c(n_qubits);
  std::size_t p = 0;
  auto rotation_columns = [&] {
    for (int q = 0; q < n_qubits; ++q) c.add(Gate::ry(q, params[p++]));
    for (int q = 0; q < n_qubits; ++q) c.add(Gate::rz(q, params[p++]));
  };
  for (int r = 0; r < reps; ++r) {
    rotation_columns();
    for (int q = 0; q + 1 < n_qubits; ++q) c.add(Gate::cnot(q, q + 1));
    rotation_columns();
  }
  return c;
}

/// Parameters drawn uniformly from [0, pi/2].
inline std::vector<double> random_efficient_su2_params(int n_qubits, int reps, Rng& rng) {
  std::vector<double> params(4 * static_cast<std::size_t>(reps) * static_cast<std::size_t>(n_qubits));
  for (auto& x : params) x = rng.uniform(0.0, std::numbers::pi / 2.0);
  return params;
}

class StateVector {
 public:
  /// |0...0>
  explicit StateVector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > 24) throw Error(ErrorCode::InvalidArgument, "unsupported qubit count");
    amps_.assign(std::size_t{1} << n_qubits, Complex{});
    amps_[0] = 1.0;
  }

  /// From explicit amplitudes; must be normalized within 1e-10.
  explicit StateVector(std::vector<Complex> amplitudes) : n_qubits_(qubit_count(amplitudes.size())) {
    amps_ = std::move(amplitudes);
    const double norm = std::sqrt(norm2());
    if (std::abs(norm - 1.0) > 1e-10) {
      throw Error(ErrorCode::InvalidArgument, "state vector norm " + std::to_string(norm));
    }
  }

  int n_qubits() const noexcept { return n_qubits_; }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  double norm2() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

  DensityOperator density() const { return DensityOperator::pure(amps_); }

  /// Applies a 2x2 unitary u = [[u00, u01], [u10, u11]] to qubit q.
  void apply_1q(int q, const std::array<Complex, 4>& u) {
    const std::size_t stride = std::size_t{1} << (n_qubits_ - 1 - q);
    for (std::size_t base = 0; base < amps_.size(); base += 2 * stride)
      for (std::size_t k = base; k < base + stride; ++k) {
        const Complex a0 = amps_[k];
        const Complex a1 = amps_[k + stride];
        amps_[k] = u[0] * a0 + u[1] * a1;
        amps_[k + stride] = u[2] * a0 + u[3] * a1;
      }
  }

  void apply_cnot(int control, int target) {
    const std::size_t cbit = std::size_t{1} << (n_qubits_ - 1 - control);
    const std::size_t tbit = std::size_t{1} << (n_qubits_ - 1 - target);
    for (std::size_t k = 0; k < amps_.size(); ++k)
      if ((k & cbit) && !(k & tbit)) std::swap(amps_[k], amps_[k | tbit]);
  }

  void apply(const Gate& g) {
    switch (g.kind) {
      case GateKind::RY: {
        const double c = std::cos(*g.angle / 2.0);
        const double s = std::sin(*g.angle / 2.0);
        apply_1q(g.target, {c, -s, s, c});
        break;
      }
      case GateKind::RZ: {
        const Complex e = std::polar(1.0, -*g.angle / 2.0);
        apply_1q(g.target, {e, 0.0, 0.0, std::conj(e)});
        break;
      }
      case GateKind::CNOT:
        apply_cnot(*g.control, g.target);
        break;
    }
  }

  /// Tensor product with `other` appended as the less significant qubits.
  friend StateVector tensor(const StateVector& a, const StateVector& b) {
    std::vector<Complex> out(a.amps_.size() * b.amps_.size());
    for (std::size_t i = 0; i < a.amps_.size(); ++i)
      for (std::size_t j = 0; j < b.amps_.size(); ++j) out[i * b.amps_.size() + j] = a.amps_[i] * b.amps_[j];
    return StateVector(std::move(out));
  }

 private:
  int n_qubits_;
  std::vector<Complex> amps_;
};

inline StateVector run(const Circuit& circuit, StateVector state) {
  if (state.n_qubits() != circuit.n_qubits()) {
    throw Error(ErrorCode::DimMismatch, "circuit has " + std::to_string(circuit.n_qubits()) + " qubits, state " +
                                            std::to_string(state.n_qubits()));
  }
  for (const auto& g : circuit.gates()) state.apply(g);
  return state;
}

inline StateVector run(const Circuit& circuit) { return run(circuit, StateVector(circuit.n_qubits())); }

// ---------------------------------------------------------------------------
// Shadow sampling

/// One randomized Pauli measurement: character i of `bases`/`bits` belongs to
/// qubit i.
struct SnapshotRecord {
  std::string bases;
  std::string bits;
  std::string circuit_id;

  friend bool operator==(const SnapshotRecord&, const SnapshotRecord&) = default;
};

/// Register state that factorizes over disjoint qubit blocks. Qubits not in
/// any block are idle in |0>.
class ProductState {
 public:
  struct Block {
    std::vector<int> qubits;  // device qubit for each local qubit, MSB first
    StateVector state;
  };

  explicit ProductState(int n_qubits) : n_qubits_(n_qubits), owner_(static_cast<std::size_t>(n_qubits), -1) {
    if (n_qubits < 1) throw Error(ErrorCode::InvalidArgument, "n_qubits must be >= 1");
  }

  /// The whole register in one block.
  explicit ProductState(StateVector state) : ProductState(state.n_qubits()) {
    std::vector<int> qubits(static_cast<std::size_t>(state.n_qubits()));
    for (int q = 0; q < state.n_qubits(); ++q) qubits[static_cast<std::size_t>(q)] = q;
    add_block(std::move(qubits), std::move(state));
  }

  ProductState& add_block(std::vector<int> qubits, StateVector state) {
    if (static_cast<int>(qubits.size()) != state.n_qubits()) {
      throw Error(ErrorCode::DimMismatch, "block qubit list does not match state size");
    }
    for (int q : qubits) {
      if (q < 0 || q >= n_qubits_) throw Error(ErrorCode::IndexOutOfRange, "block qubit " + std::to_string(q));
      if (owner_[static_cast<std::size_t>(q)] != -1) {
        throw Error(ErrorCode::InvalidArgument, "qubit " + std::to_string(q) + " already in a block");
      }
    }
    for (int q : qubits) owner_[static_cast<std::size_t>(q)] = static_cast<int>(blocks_.size());
    blocks_.push_back({std::move(qubits), std::move(state)});
    return *this;
  }

  int n_qubits() const noexcept { return n_qubits_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }

  /// Exact reduced density operator on `qubits`, in the given order.
  DensityOperator reduced(std::span<const int> qubits) const {
    // Gather the touched blocks plus idle qubits into one small register.
    std::vector<int> order;
    StateVector joint = StateVector(1);
    bool first = true;
    std::vector<bool> block_used(blocks_.size(), false);
    auto append = [&](const std::vector<int>& qs, const StateVector& s) {
      joint = first ? s : tensor(joint, s);
      first = false;
      order.insert(order.end(), qs.begin(), qs.end());
    };
    for (int q : qubits) {
      if (q < 0 || q >= n_qubits_) throw Error(ErrorCode::IndexOutOfRange, "qubit " + std::to_string(q));
      const int b = owner_[static_cast<std::size_t>(q)];
      if (b == -1) {
        append({q}, StateVector(1));
      } else if (!block_used[static_cast<std::size_t>(b)]) {
        block_used[static_cast<std::size_t>(b)] = true;
        append(blocks_[static_cast<std::size_t>(b)].qubits, blocks_[static_cast<std::size_t>(b)].state);
      }
    }
    if (joint.n_qubits() > 14) throw Error(ErrorCode::Overflow, "reference register exceeds 14 qubits");
    std::vector<int> keep;
    for (int q : qubits) {
      const auto it = std::find(order.begin(), order.end(), q);
      keep.push_back(static_cast<int>(it - order.begin()));
    }
    return joint.density().reduced(keep);
  }

 private:
  int n_qubits_;
  std::vector<Block> blocks_;
  std::vector<int> owner_;
};

namespace detail {

// Rotation applied before a computational-basis measurement: U_X = H,
// U_Y = H S^dagger, U_Z = I. Row-major 2x2.
inline const std::array<Complex, 4>& basis_rotation(char basis) {
  static const double r = 1.0 / std::numbers::sqrt2;
  static const std::array<Complex, 4> kX{r, r, r, -r};
  static const std::array<Complex, 4> kY{r, Complex(0.0, -r), r, Complex(0.0, r)};
  static const std::array<Complex, 4> kZ{1.0, 0.0, 0.0, 1.0};
  switch (basis) {
    case 'X': return kX;
    case 'Y': return kY;
    default: return kZ;
  }
}

constexpr std::size_t kRecordsPerSubstream = 4096;

}  // namespace detail

/// Draws `n_records` shadow measurements of `state`. For each record every
/// qubit's basis is uniform over {X, Y, Z} and the outcome bits follow the
/// exact Born distribution of the rotated state. Records are generated in
/// independently seeded substreams of 4096, so the output depends only on
/// (state, n_records, seed), not on the worker count.
inline std::vector<SnapshotRecord> sample_shadow(const ProductState& state, std::size_t n_records,
                                                 std::uint64_t seed, const std::string& circuit_id = "") {
  if (n_records < 1) throw Error(ErrorCode::InvalidArgument, "n_records must be >= 1");
  static constexpr char kBases[3] = {'X', 'Y', 'Z'};
  const int n = state.n_qubits();
  std::vector<SnapshotRecord> out(n_records);
  const std::size_t chunks = (n_records + detail::kRecordsPerSubstream - 1) / detail::kRecordsPerSubstream;

  parallel_for(chunks, [&](std::size_t chunk) {
    Rng rng(seed, chunk);
    const std::size_t begin = chunk * detail::kRecordsPerSubstream;
    const std::size_t end = std::min(n_records, begin + detail::kRecordsPerSubstream);
    std::vector<double> cumulative;
    for (std::size_t r = begin; r < end; ++r) {
      SnapshotRecord rec{std::string(static_cast<std::size_t>(n), 'Z'), std::string(static_cast<std::size_t>(n), '0'),
                         circuit_id};
      for (int q = 0; q < n; ++q) rec.bases[static_cast<std::size_t>(q)] = kBases[rng.index(3)];
      for (const auto& block : state.blocks()) {
        StateVector rotated = block.state;
        for (std::size_t local = 0; local < block.qubits.size(); ++local) {
          const char b = rec.bases[static_cast<std::size_t>(block.qubits[local])];
          if (b != 'Z') rotated.apply_1q(static_cast<int>(local), detail::basis_rotation(b));
        }
        const auto amps = rotated.amplitudes();
        cumulative.resize(amps.size());
        double acc = 0.0;
        for (std::size_t k = 0; k < amps.size(); ++k) cumulative[k] = (acc += std::norm(amps[k]));
        const double u = rng.uniform() * acc;
        std::size_t outcome = static_cast<std::size_t>(
            std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
        outcome = std::min(outcome, amps.size() - 1);
        const std::size_t width = block.qubits.size();
        for (std::size_t local = 0; local < width; ++local) {
          const bool bit = (outcome >> (width - 1 - local)) & 1U;
          rec.bits[static_cast<std::size_t>(block.qubits[local])] = bit ? '1' : '0';
        }
      }
      out[r] = std::move(rec);
    }
  });
  return out;
}

inline std::vector<SnapshotRecord> sample_shadow(const StateVector& state, std::size_t n_records, std::uint64_t seed,
                                                 const std::string& circuit_id = "") {
  return sample_shadow(ProductState(state), n_records, seed, circuit_id);
}

// ---------------------------------------------------------------------------
// Random Pauli perturbation

/// The 16 two-qubit Pauli products sigma_i (x) sigma_j, i, j in {I, X, Y, Z}.
inline const std::array<CMatrix, 16>& two_qubit_paulis() {
  static const std::array<CMatrix, 16> table = [] {
    const std::array<CMatrix, 4> single{
        CMatrix::identity(2),
        CMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}),
        CMatrix::from_rows({{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}}),
        CMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}),
    };
    std::array<CMatrix, 16> t;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) t[4 * i + j] = kron(single[i], single[j]);
    return t;
  }();
  return table;
}

/// rho~ = rho0 + 1/2 sum_ij eta_ij sigma_i (x) sigma_j with real
/// eta_ij ~ N(0, sigma^2) (identity term included), then
/// rho = V |Lambda| V^dagger / tr(V |Lambda| V^dagger) from rho~ = V Lambda V^dagger.
inline DensityOperator perturb_state(const DensityOperator& rho0, double sigma, Rng& rng) {
  if (rho0.n_qubits() != 2) {
    throw Error(ErrorCode::WrongSize, "perturbation model is defined for 2 qubits, got " +
                                          std::to_string(rho0.n_qubits()));
  }
  if (!(sigma >= 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma must be >= 0");
  if (sigma == 0.0) return rho0;
  CMatrix tilde = rho0.matrix();
  const auto& paulis = two_qubit_paulis();
  for (const auto& p : paulis) tilde += p * (0.5 * rng.normal(0.0, sigma));
  CMatrix rho = mat_abs(tilde);
  const double tr = rho.trace().real();
  if (!(tr > 0.0)) throw Error(ErrorCode::NotValidDensity, "perturbed operator vanished");
  return DensityOperator::validated(rho / tr);
}

inline DensityOperator perturb_state(const DensityOperator& rho0, double sigma, std::uint64_t seed) {
  Rng rng(seed);
  return perturb_state(rho0, sigma, rng);
}

}  // namespace zecs

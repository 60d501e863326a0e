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
#include <numbers>
#include <numeric>
#include <vector>

#include "test_util.hpp"
#include "zecs/simulator.hpp"

namespace zecs {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(EfficientSU2, TwoQubitOneRepSchedule) {
  const std::vector<double> params{1, 2, 3, 4, 5, 6, 7, 8};
  const Circuit c = build_efficient_su2(2, 1, params);
  const std::vector<Gate> expected{Gate::ry(0, 1), Gate::ry(1, 2), Gate::rz(0, 3), Gate::rz(1, 4), Gate::cnot(0, 1),
                                   Gate::ry(0, 5), Gate::ry(1, 6), Gate::rz(0, 7), Gate::rz(1, 8)};
  EXPECT_EQ(c.gates(), expected);
}

TEST(EfficientSU2, ParameterAndGateCounts) {
  for (int n : {1, 2, 3, 7})
    for (int reps : {1, 2, 4}) {
      const std::vector<double> params(static_cast<std::size_t>(4 * reps * n), 0.1);
      const Circuit c = build_efficient_su2(n, reps, params);
      EXPECT_EQ(c.gates().size(), static_cast<std::size_t>(reps * (4 * n + (n - 1))));
    }
}

TEST(EfficientSU2, Rejections) {
  try {
    (void)build_efficient_su2(3, 0, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
  try {
    const std::vector<double> short_params(7, 0.0);
    (void)build_efficient_su2(2, 1, short_params);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadParamCount);
  }
}

TEST(EfficientSU2, ZeroParamsFixAllZeros) {
  for (int n : {1, 3, 5}) {
    const std::vector<double> params(static_cast<std::size_t>(4 * 3 * n), 0.0);
    const StateVector out = run(build_efficient_su2(n, 3, params));
    EXPECT_NEAR(std::abs(out[0] - Complex(1.0)), 0.0, 1e-15);
  }
}

TEST(Run, EmptyCircuitIsIdentity) {
  Rng rng(1);
  const StateVector psi(testing::random_state(8, rng));
  const StateVector out = run(Circuit(3), psi);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(out[i], psi[i]);
}

TEST(Run, RyPiFlipsQubit) {
  const StateVector out = run(Circuit(1, {Gate::ry(0, kPi)}));
  EXPECT_NEAR(std::abs(out[0]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out[1]), 1.0, 1e-15);
}

TEST(Run, BellCircuit) {
  const StateVector out = run(Circuit(2, {Gate::ry(0, kPi / 2), Gate::cnot(0, 1)}));
  const double r = 1.0 / std::numbers::sqrt2;
  EXPECT_NEAR(std::abs(out[0] - r), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(out[1]), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(out[2]), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(out[3] - r), 0.0, 1e-10);
}

TEST(Run, QubitZeroIsMostSignificant) {
  const StateVector out = run(Circuit(3, {Gate::ry(0, kPi)}));
  EXPECT_NEAR(std::abs(out[4]), 1.0, 1e-15);  // |100>
}

TEST(Run, DimMismatch) {
  try {
    (void)run(Circuit(2), StateVector(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimMismatch);
  }
}

TEST(Run, InverseRestoresStateAndNormPreserved) {
  Rng rng(2);
  for (int n : {2, 4, 6}) {
    const auto params = random_efficient_su2_params(n, 3, rng);
    const Circuit c = build_efficient_su2(n, 3, params);
    const StateVector psi(testing::random_state(std::size_t{1} << n, rng));
    const StateVector forward = run(c, psi);
    EXPECT_NEAR(forward.norm2(), 1.0, 1e-10);
    const StateVector back = run(c.inverse(), forward);
    for (std::size_t i = 0; i < psi.amplitudes().size(); ++i) EXPECT_NEAR(std::abs(back[i] - psi[i]), 0.0, 1e-8);
  }
}

TEST(RandomParams, UniformInQuarterTurn) {
  Rng rng(3);
  const auto params = random_efficient_su2_params(4, 5, rng);
  EXPECT_EQ(params.size(), 80u);
  for (double p : params) {
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, kPi / 2);
  }
}

// ---------------------------------------------------------------------------
// Sampling

TEST(SampleShadow, ZeroStateInZBasisAlwaysZero) {
  const auto records = sample_shadow(StateVector(1), 3000, 1);
  for (const auto& r : records)
    if (r.bases == "Z") EXPECT_EQ(r.bits, "0");
}

TEST(SampleShadow, PlusStateXBasisCertainZBasisFair) {
  const StateVector plus = run(Circuit(1, {Gate::ry(0, kPi / 2)}));
  const auto records = sample_shadow(plus, 30000, 2);
  std::size_t z_total = 0, z_ones = 0;
  for (const auto& r : records) {
    if (r.bases == "X") EXPECT_EQ(r.bits, "0");
    if (r.bases == "Z") {
      ++z_total;
      z_ones += r.bits == "1";
    }
  }
  // Chi-square (1 dof) against the fair coin; 10.83 is the p = 0.001 cutoff.
  const double expected = z_total / 2.0;
  const double chi2 = 2.0 * std::pow(z_ones - expected, 2) / expected;
  EXPECT_LT(chi2, 10.83);
  EXPECT_GT(z_total, 9000u);
}

TEST(SampleShadow, BellZZPerfectlyCorrelated) {
  const StateVector bell = run(Circuit(2, {Gate::ry(0, kPi / 2), Gate::cnot(0, 1)}));
  for (const auto& r : sample_shadow(bell, 5000, 3))
    if (r.bases == "ZZ") EXPECT_TRUE(r.bits == "00" || r.bits == "11") << r.bits;
}

TEST(SampleShadow, BasisFrequenciesUniform) {
  const std::size_t n = 30000;
  const auto records = sample_shadow(StateVector(3), n, 4);
  const double p = 1.0 / 3.0;
  const double sd = std::sqrt(n * p * (1 - p));
  for (std::size_t q = 0; q < 3; ++q)
    for (char b : {'X', 'Y', 'Z'}) {
      const auto count = std::count_if(records.begin(), records.end(), [&](const auto& r) { return r.bases[q] == b; });
      EXPECT_LT(std::abs(count - n * p), 3 * sd) << "qubit " << q << " basis " << b;
    }
}

TEST(SampleShadow, ProductStateMarginalsFollowBorn) {
  // Qubit 0: RY(theta0)|0>, qubit 1: RY(theta1)|0>; P(1 | Z) = sin^2(theta/2).
  const double thetas[2] = {0.7, 2.1};
  const StateVector psi = run(Circuit(2, {Gate::ry(0, thetas[0]), Gate::ry(1, thetas[1])}));
  const auto records = sample_shadow(psi, 40000, 5);
  for (std::size_t q = 0; q < 2; ++q) {
    std::size_t total = 0, ones = 0;
    for (const auto& r : records)
      if (r.bases[q] == 'Z') {
        ++total;
        ones += r.bits[q] == '1';
      }
    const double p1 = std::pow(std::sin(thetas[q] / 2), 2);
    const double e1 = total * p1, e0 = total * (1 - p1);
    const double chi2 = std::pow(ones - e1, 2) / e1 + std::pow((total - ones) - e0, 2) / e0;
    EXPECT_LT(chi2, 10.83) << "qubit " << q;
  }
}

TEST(SampleShadow, ReproducibleFromSeed) {
  Rng rng(6);
  const StateVector psi(testing::random_state(8, rng));
  const auto a = sample_shadow(psi, 10000, 42, "c");
  const auto b = sample_shadow(psi, 10000, 42, "c");
  EXPECT_EQ(a, b);
  const auto c = sample_shadow(psi, 10000, 43, "c");
  EXPECT_NE(a, c);
  // A prefix of a longer stream equals the shorter stream.
  const auto longer = sample_shadow(psi, 12000, 42, "c");
  EXPECT_TRUE(std::equal(a.begin(), a.end(), longer.begin()));
}

TEST(SampleShadow, IdleQubitsStayZero) {
  ProductState device(5);
  device.add_block({3, 1}, run(Circuit(2, {Gate::ry(0, kPi / 2), Gate::cnot(0, 1)})));
  for (const auto& r : sample_shadow(device, 3000, 7)) {
    for (std::size_t q : {0u, 2u, 4u})
      if (r.bases[q] == 'Z') EXPECT_EQ(r.bits[q], '0');
    if (r.bases[3] == 'Z' && r.bases[1] == 'Z') EXPECT_EQ(r.bits[3], r.bits[1]);
  }
}

TEST(ProductState, ReducedFollowsRequestedOrder) {
  ProductState device(4);
  const StateVector one = run(Circuit(1, {Gate::ry(0, kPi)}));
  device.add_block({2}, one);
  const auto rho = device.reduced(std::vector<int>{2, 0});
  EXPECT_NEAR(rho.matrix()(2, 2).real(), 1.0, 1e-15);  // |10> in (q2, q0) order
}

// ---------------------------------------------------------------------------
// Perturbation model

DensityOperator bell_density() { return DensityOperator::pure(testing::bell_phi_plus()); }

TEST(PerturbState, ZeroSigmaIsIdentity) {
  const auto rho0 = bell_density();
  EXPECT_EQ(perturb_state(rho0, 0.0, 1).matrix(), rho0.matrix());
}

TEST(PerturbState, OutputAlwaysValid) {
  const auto rho0 = bell_density();
  for (double sigma : {0.01, 0.1, 0.3, 0.5})
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto rho = perturb_state(rho0, sigma, seed);
      EXPECT_TRUE(rho.is_validated());
      EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-10);
    }
}

TEST(PerturbState, WrongSize) {
  try {
    (void)perturb_state(DensityOperator::maximally_mixed(3), 0.1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WrongSize);
  }
}

std::vector<double> ranks(const std::vector<double>& x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return x[a] < x[b]; });
  std::vector<double> r(x.size());
  for (std::size_t k = 0; k < idx.size(); ++k) r[idx[k]] = static_cast<double>(k);
  return r;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

TEST(PerturbState, DistanceStochasticallyIncreasingInSigma) {
  // Spearman correlation between sigma and the mean Frobenius distance over
  // a sigma grid, 200 seeds per grid point.
  const auto rho0 = bell_density();
  std::vector<double> sigmas, means;
  for (int k = 1; k <= 10; ++k) {
    const double sigma = 0.05 * k;
    double total = 0.0;
    for (std::uint64_t seed = 0; seed < 200; ++seed)
      total += frobenius_distance(perturb_state(rho0, sigma, seed + 1000 * k).matrix(), rho0.matrix());
    sigmas.push_back(sigma);
    means.push_back(total / 200.0);
  }
  EXPECT_GT(pearson(ranks(sigmas), ranks(means)), 0.9);
}

}  // namespace
}  // namespace zecs

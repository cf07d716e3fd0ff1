// Copyright 2026 The dimergate Authors
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

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "dimergate/model.hpp"
#include "oracles.hpp"

namespace dimergate {
namespace {

// Frozen from a 30-digit evaluation of the closed forms.
constexpr double kSplitting = 2998.73306581296095;
constexpr double kAlpha1 = 0.941716533462310950;
constexpr double kAlpha2 = 0.336407447307172707;
constexpr double kAlpha2Weak = 0.00999850038738316;
constexpr double kNearFieldV = 5968.31036594607509;
constexpr double kDeltaShift = -1.07758620689655172;

SystemParams undriven(double dm, double v) {
  SystemParams p;
  p.delta_minus = dm;
  p.v12 = v;
  return p;
}

// Gap between the two eigenvectors living in {|01>, |10>}.
double single_excitation_gap(const EigenSystem& es) {
  std::vector<double> e;
  for (int k = 0; k < 4; ++k) {
    if (std::norm(es.coefficient(k, Basis::ge)) + std::norm(es.coefficient(k, Basis::eg)) > 0.5) {
      e.push_back(es.energies_mhz[k]);
    }
  }
  return e.size() == 2 ? e[1] - e[0] : std::nan("");
}

TEST(Model, SplittingMatchesClosedForm) {
  const auto es = eigensystem(build_hamiltonian(undriven(2320.0, 950.0)));
  EXPECT_NEAR(single_excitation_gap(es) / kSplitting, 1.0, 1e-12);
  const auto dc = dressed_coefficients(2320.0, 950.0);
  EXPECT_NEAR(dc.splitting_mhz, kSplitting, 1e-9);
}

TEST(Model, SplittingOracleFromQuadratic) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-4000.0, 4000.0);
  for (int i = 0; i < 50; ++i) {
    const double dm = u(rng), v = u(rng) / 4;
    // 2x2 block [[-dm/2, v], [v, dm/2]]: eigenvalues from trace/determinant.
    const double det = -dm * dm / 4 - v * v;
    const double gap = 2 * std::sqrt(-det);
    const auto es = eigensystem(build_hamiltonian(undriven(dm, v)));
    EXPECT_NEAR(single_excitation_gap(es), gap, 1e-9 * std::max(1.0, gap));
  }
}

TEST(Model, EigensystemIsFast) {
  const auto h = build_hamiltonian(undriven(2320.0, 950.0));
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 100; ++i) (void)eigensystem(h);
  const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / 100;
  EXPECT_LT(dt, 1e-3);
}

TEST(Model, DressedCoefficientsFrozen) {
  const auto dc = dressed_coefficients(2320.0, 950.0);
  EXPECT_NEAR(dc.alpha1, kAlpha1, 1e-12);
  EXPECT_NEAR(dc.alpha2, kAlpha2, 1e-12);
  EXPECT_NEAR(dc.alpha1 * dc.alpha1 + dc.alpha2 * dc.alpha2, 1.0, 1e-14);
  EXPECT_FALSE(dc.degenerate_limit);
}

TEST(Model, DressedCoefficientsMatchEigenvectors) {
  const auto es = eigensystem(build_hamiltonian(undriven(2320.0, 950.0)));
  const auto dc = dressed_coefficients(2320.0, 950.0);
  int found = 0;
  for (int k = 0; k < 4; ++k) {
    const double a = std::abs(es.coefficient(k, Basis::ge));
    const double b = std::abs(es.coefficient(k, Basis::eg));
    if (a * a + b * b < 0.5) continue;
    ++found;
    EXPECT_NEAR(std::max(a, b), dc.alpha1, 1e-10);
    EXPECT_NEAR(std::min(a, b), dc.alpha2, 1e-10);
  }
  EXPECT_EQ(found, 2);
}

TEST(Model, DressedCoefficientsLimits) {
  const auto deg = dressed_coefficients(0.0, 950.0);
  EXPECT_TRUE(deg.degenerate_limit);
  EXPECT_DOUBLE_EQ(deg.alpha1, std::numbers::sqrt2 / 2);
  EXPECT_DOUBLE_EQ(deg.alpha2, std::numbers::sqrt2 / 2);

  const auto weak = dressed_coefficients(1000.0, 10.0);
  EXPECT_NEAR(weak.alpha2, kAlpha2Weak, 1e-14);
  EXPECT_NEAR(weak.alpha2, 10.0 / 1000.0, 2e-6);
  EXPECT_NEAR(weak.alpha1, 1.0, 1e-4);

  // no cancellation for |dm| >> V
  const auto tiny = dressed_coefficients(1e6, 1e-3);
  EXPECT_NEAR(tiny.alpha2 / 1e-9, 1.0, 1e-9);
}

TEST(Model, EigenvectorPhaseIsDeterministic) {
  const auto a = eigensystem(build_hamiltonian(undriven(-1500.0, 300.0)));
  const auto b = eigensystem(build_hamiltonian(undriven(-1500.0, 300.0)));
  EXPECT_EQ(a.vectors, b.vectors);
  for (int k = 0; k < 4; ++k) {
    Eigen::Index idx;
    a.vectors.col(k).cwiseAbs().maxCoeff(&idx);
    EXPECT_GT(a.vectors(idx, k).real(), 0.0);
    EXPECT_NEAR(a.vectors(idx, k).imag(), 0.0, 1e-14);
  }
}

TEST(Model, HamiltonianMatchesHandWrittenForm) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const auto p = oracle::random_params(rng);
    const double c = 100.0 * i - 900.0, phi = 0.3 * i;
    const Matrix4c h = build_hamiltonian(p, c, phi).matrix();
    const Matrix4c ref = oracle::hamiltonian(p, p.ell1, p.ell2, c, phi);
    EXPECT_LT((h - ref).cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, ref.cwiseAbs().maxCoeff()));
  }
}

TEST(Model, HamiltonianRejectsNonHermitian) {
  Matrix4c m = Matrix4c::Identity();
  m(0, 1) = cplx(1.0, 0.0);
  EXPECT_THROW(Hamiltonian{m}, ValidationError);
}

TEST(Model, ParamsValidation) {
  SystemParams p = undriven(100.0, 10.0);
  p.gamma1 = 50.0;
  p.gamma2 = 50.0;
  p.gamma12 = 50.0;
  EXPECT_NO_THROW(p.validate());
  p.gamma12 = 50.1;
  EXPECT_THROW(p.validate(), ValidationError);
  p.gamma12 = 0.0;
  p.gamma1 = -1.0;
  EXPECT_THROW(p.validate(), ValidationError);
  p.gamma1 = 1.0;
  p.v12 = std::nan("");
  EXPECT_THROW(p.validate(), ValidationError);
}

DipoleGeometry h_aggregate() {
  DipoleGeometry g;
  g.d1_hat = {0, 0, 1};
  g.d2_hat = {0, 0, 1};
  g.r12_hat = {1, 0, 0};
  g.n_index = 1.0;
  g.lambda0_nm = 600.0;
  g.r12_nm = 0.1 * 600.0 / (2 * std::numbers::pi);  // z = 0.1
  g.gamma1 = 50.0;
  g.gamma2 = 50.0;
  return g;
}

TEST(Model, NearFieldCouplingFrozen) {
  const auto nf = near_field_coupling(h_aggregate());
  EXPECT_NEAR(nf.z, 0.1, 1e-15);
  EXPECT_NEAR(nf.v12_mhz / kNearFieldV, 1.0, 1e-12);
  EXPECT_NEAR(nf.gamma12_mhz, 50.0, 1e-12);
  EXPECT_FALSE(nf.outside_near_field);
}

TEST(Model, NearFieldGeometryFactor) {
  auto g = h_aggregate();
  g.d1_hat = {1, 0, 0};
  g.d2_hat = {1, 0, 0};  // head-to-tail: kappa = -2
  EXPECT_NEAR(near_field_coupling(g).v12_mhz / kNearFieldV, -2.0, 1e-12);
  g.d2_hat = {0, 1, 0};  // orthogonal
  const auto o = near_field_coupling(g);
  EXPECT_NEAR(o.v12_mhz, 0.0, 1e-9);
  EXPECT_NEAR(o.gamma12_mhz, 0.0, 1e-12);
  g.r12_nm = 100.0;
  EXPECT_TRUE(near_field_coupling(g).outside_near_field);
}

TEST(Model, NearFieldPropertyCauchySchwarz) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(1.0, 100.0);
  for (int i = 0; i < 200; ++i) {
    auto g = h_aggregate();
    g.d1_hat = oracle::random_unit(rng);
    g.d2_hat = oracle::random_unit(rng);
    g.r12_hat = oracle::random_unit(rng);
    g.gamma1 = u(rng);
    g.gamma2 = u(rng);
    const auto nf = near_field_coupling(g);
    EXPECT_LE(std::abs(nf.gamma12_mhz), std::sqrt(g.gamma1 * g.gamma2) * (1 + 1e-12));
    SystemParams p;
    p.gamma1 = g.gamma1;
    p.gamma2 = g.gamma2;
    p.gamma12 = nf.gamma12_mhz;
    p.v12 = nf.v12_mhz;
    EXPECT_NO_THROW(p.validate());
  }
}

TEST(Model, ConditionalFrequencies) {
  SystemParams p;
  p.delta_minus = -2320.0;
  p.delta_plus = -2638.0;
  p.v12 = 50.0;
  p.delta_eps = 160.0;
  const auto cf = conditional_frequencies(p);
  EXPECT_NEAR(cf.delta_shift, kDeltaShift, 1e-13);
  EXPECT_NEAR(cf.omega12_offset, p.delta2() - kDeltaShift + 160.0, 1e-9);
  EXPECT_NEAR(cf.omega21_offset, p.delta1() + kDeltaShift + 160.0, 1e-9);
  p.delta_minus = 0.0;
  EXPECT_THROW(conditional_frequencies(p), ValidationError);
}

TEST(Model, ConditionalFrequencyHitsDressedTransition) {
  // |10>-like -> |11> transition from the exact undriven spectrum agrees to O(V^4/dm^3).
  SystemParams p;
  p.delta_minus = -2320.0;
  p.delta_plus = -2638.0;
  p.v12 = 50.0;
  p.delta_eps = 160.0;
  const auto es = eigensystem(build_hamiltonian(p));
  int k10 = 0;
  for (int k = 0; k < 4; ++k)
    if (std::abs(es.coefficient(k, Basis::eg)) > 0.9) k10 = k;
  int k11 = 0;
  for (int k = 0; k < 4; ++k)
    if (std::abs(es.coefficient(k, Basis::ee)) > 0.9) k11 = k;
  const double exact = es.energies_mhz[k11] - es.energies_mhz[k10];
  EXPECT_NEAR(conditional_frequencies(p).omega12_offset, exact, 1e-3);
}

}  // namespace
}  // namespace dimergate

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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "dimergate/gates.hpp"
#include "oracles.hpp"

namespace dimergate {
namespace {

SystemParams cnot_params(bool lossy) {
  SystemParams p;
  p.delta_minus = -2320.0;
  p.delta_plus = -2638.0;
  p.v12 = 50.0;
  p.delta_eps = 160.0;
  p.ell1 = p.ell2 = 200.0;
  if (lossy) {
    p.gamma1 = p.gamma2 = 50.0;
    p.gamma12 = 9.0;
  }
  return p;
}

TEST(Gates, PiPulseDuration) {
  EXPECT_DOUBLE_EQ(pi_pulse_duration(200.0, std::numbers::pi), 1.25);
  EXPECT_DOUBLE_EQ(pi_pulse_duration(200.0, std::numbers::pi / 2), 0.625);
  EXPECT_THROW(pi_pulse_duration(1e-6, std::numbers::pi), ValidationError);
  EXPECT_THROW(pi_pulse_duration(0.0, std::numbers::pi), ValidationError);
}

TEST(Gates, CnotTruthTable) {
  EXPECT_EQ(cnot_output(Basis::gg, 1), Basis::gg);
  EXPECT_EQ(cnot_output(Basis::ge, 1), Basis::ge);
  EXPECT_EQ(cnot_output(Basis::eg, 1), Basis::ee);
  EXPECT_EQ(cnot_output(Basis::ee, 1), Basis::eg);
  EXPECT_EQ(cnot_output(Basis::ge, 2), Basis::ee);
  EXPECT_EQ(cnot_output(Basis::eg, 2), Basis::eg);
  EXPECT_THROW(cnot_output(Basis::gg, 3), ValidationError);
}

TEST(Gates, CnotScheduleShape) {
  const auto p = cnot_params(false);
  const auto s = cnot_schedule(p, 1, 200.0);
  ASSERT_EQ(s.segments().size(), 1u);
  EXPECT_DOUBLE_EQ(s.total_duration_ns(), 1.25);
  EXPECT_DOUBLE_EQ(s.segments()[0].freq_offset_mhz, conditional_frequencies(p).omega12_offset);
  const auto t = cnot_schedule(p, 1, 200.0, DriveAddressing::target_only);
  EXPECT_EQ(t.segments()[0].amp1_mhz, 0.0);
  EXPECT_EQ(t.segments()[0].amp2_mhz, 200.0);
  EXPECT_THROW(cnot_schedule(p, 0, 200.0), ValidationError);
}

TEST(Gates, CnotFlipsTargetWhenControlExcited) {
  const auto p = cnot_params(false);
  const auto r = run_schedule(DensityMatrix::basis(Basis::eg), cnot_schedule(p, 1, 200.0), p,
                              basis_state(Basis::ee));
  EXPECT_GE(population(r.final_state, Basis::ee), 0.95);
}

TEST(Gates, BellFidelityOrdering) {
  const auto lossless = cnot_params(false);
  const auto lossy = cnot_params(true);
  const auto a = run_schedule(DensityMatrix::basis(Basis::gg), bell_schedule(lossless, 50.0), lossless,
                              bell_target());
  const auto b = run_schedule(DensityMatrix::basis(Basis::gg), bell_schedule(lossy, 50.0), lossy, bell_target());
  EXPECT_GE(a.fidelity, 0.95);
  EXPECT_LT(b.fidelity, a.fidelity);
  // calibrated phase puts the |11><00| coherence near the positive real axis
  EXPECT_NEAR(std::arg(a.final_state(3, 0)), 0.0, 1e-2);
  EXPECT_EQ(bell_schedule(lossless, 50.0).segments().size(), 2u);
}

TEST(Gates, ScheduleTrajectoryIsContinuous) {
  const auto p = cnot_params(true);
  const auto s = bell_schedule(p, 200.0);
  const auto r = run_schedule(DensityMatrix::basis(Basis::gg), s, p, bell_target(), "bell", 0.1);
  ASSERT_GE(r.trajectory.size(), 2u);
  for (std::size_t k = 1; k < r.trajectory.size(); ++k) EXPECT_GT(r.trajectory[k].t_ns, r.trajectory[k - 1].t_ns);
  EXPECT_NEAR(r.trajectory.back().t_ns, s.total_duration_ns(), 1e-12);
  EXPECT_EQ(r.target_label, "bell");
}

TEST(Gates, EmptyScheduleRejected) {
  EXPECT_THROW(PulseSchedule(std::vector<PulseSegment>{}), ValidationError);
}

TEST(Gates, XyGateIsUnitaryAndTransfers) {
  const double v = 120.0;
  const double t = xy_gate_time(v);
  const auto g = ideal_xy_gate(v, t);
  EXPECT_FALSE(g.identity_fallback);
  EXPECT_LT((g.unitary * g.unitary.adjoint() - Matrix4c::Identity()).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_NEAR(std::abs(g.unitary(2, 1)), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(g.unitary(1, 1)), 0.0, 1e-12);
}

TEST(Gates, XyGateMatchesModelGenerator) {
  const double v = 75.0;
  SystemParams p;
  p.v12 = 2 * v;
  const Matrix4c h = build_hamiltonian(p).matrix();
  for (double t : {0.1, 0.5, xy_gate_time(v), 3.7}) {
    const Matrix4c u = (cplx(0.0, -t) * h).exp();
    EXPECT_LT((u - ideal_xy_gate(v, t).unitary).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Gates, XyGateZeroCoupling) {
  const auto g = ideal_xy_gate(0.0, 1.0);
  EXPECT_TRUE(g.identity_fallback);
  EXPECT_EQ(g.unitary, Matrix4c::Identity());
  EXPECT_THROW(xy_gate_time(0.0), ValidationError);
}

TEST(Gates, FidelityRequiresNormalizedTarget) {
  EXPECT_THROW(state_fidelity(DensityMatrix::basis(Basis::gg), Vector4c(1, 1, 0, 0)), ValidationError);
  EXPECT_DOUBLE_EQ(state_fidelity(DensityMatrix::basis(Basis::gg), basis_state(Basis::gg)), 1.0);
  EXPECT_NEAR(state_fidelity(DensityMatrix::basis(Basis::gg), bell_target()), std::sqrt(0.5), 1e-15);
}

}  // namespace
}  // namespace dimergate

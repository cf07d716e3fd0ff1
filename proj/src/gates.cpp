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

#include "dimergate/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

namespace dimergate {

PulseSchedule::PulseSchedule(std::vector<PulseSegment> segments) : segments_(std::move(segments)) {
  validate();
}

double PulseSchedule::total_duration_ns() const {
  double total = 0.0;
  for (const auto& s : segments_) total += s.duration_ns;
  return total;
}

void PulseSchedule::validate() const {
  if (segments_.empty()) throw ValidationError("pulse schedule is empty");
  for (const auto& s : segments_) s.validate();
}

double pi_pulse_duration(double rabi_amp_mhz, double angle) {
  if (!std::isfinite(rabi_amp_mhz) || rabi_amp_mhz <= 0.0) {
    throw ValidationError("pi_pulse_duration: rabi amplitude must be > 0");
  }
  if (!std::isfinite(angle) || angle <= 0.0) throw ValidationError("pi_pulse_duration: angle must be > 0");
  const double duration = (angle / std::numbers::pi) * 1e3 / (4.0 * rabi_amp_mhz);
  if (duration > kMaxPulseDurationNs) {
    throw ValidationError("pi_pulse_duration: pulse longer than 1e6 ns (amplitude too small)");
  }
  return duration;
}

PulseSchedule cnot_schedule(const SystemParams& params, int control, double amp_mhz,
                            DriveAddressing addressing) {
  if (control != 1 && control != 2) throw ValidationError("cnot_schedule: control must be 1 or 2");
  const ConditionalFrequencies f = conditional_frequencies(params);
  PulseSegment seg;
  seg.duration_ns = pi_pulse_duration(amp_mhz, std::numbers::pi);
  seg.freq_offset_mhz = control == 1 ? f.omega12_offset : f.omega21_offset;
  const bool target_is_2 = control == 1;
  const bool both = addressing == DriveAddressing::both;
  seg.amp1_mhz = (both || !target_is_2) ? amp_mhz : 0.0;
  seg.amp2_mhz = (both || target_is_2) ? amp_mhz : 0.0;
  return PulseSchedule({seg});
}

PulseSchedule bell_schedule(const SystemParams& params, double amp_mhz) {
  const ConditionalFrequencies f = conditional_frequencies(params);

  PulseSegment half;
  half.duration_ns = pi_pulse_duration(amp_mhz, std::numbers::pi / 2.0);
  half.freq_offset_mhz = params.delta1();
  half.amp1_mhz = half.amp2_mhz = amp_mhz;

  PulseSegment flip;
  flip.duration_ns = pi_pulse_duration(amp_mhz, std::numbers::pi);
  flip.freq_offset_mhz = f.omega12_offset;
  flip.amp1_mhz = flip.amp2_mhz = amp_mhz;

  // A drive phase p multiplies the |11> amplitude by ~exp(-i p) and leaves
  // |00> alone, so one uncalibrated lossless run fixes p.
  SystemParams lossless = params;
  lossless.gamma1 = lossless.gamma2 = lossless.gamma12 = 0.0;
  const PulseSchedule trial({half, flip});
  const double total = trial.total_duration_ns();
  const GateResult probe =
      run_schedule(DensityMatrix::basis(Basis::gg), trial, lossless, bell_target(), "bell", total);
  flip.phase = std::arg(probe.final_state(3, 0));
  return PulseSchedule({half, flip});
}

double xy_gate_time(double v12_mhz) {
  if (!std::isfinite(v12_mhz) || v12_mhz == 0.0) throw ValidationError("xy_gate_time: v12 must be nonzero");
  return std::numbers::pi / (4.0 * std::abs(to_angular(v12_mhz)));
}

XyGate ideal_xy_gate(double v12_mhz, double t_ns) {
  if (!std::isfinite(v12_mhz) || !std::isfinite(t_ns)) throw ValidationError("ideal_xy_gate: non-finite input");
  XyGate gate;
  gate.unitary = Matrix4c::Identity();
  if (v12_mhz == 0.0) {
    gate.identity_fallback = true;
    return gate;
  }
  const double angle = 2.0 * to_angular(v12_mhz) * t_ns;
  const cplx c(std::cos(angle), 0.0);
  const cplx s(0.0, -std::sin(angle));
  gate.unitary(1, 1) = c;
  gate.unitary(2, 2) = c;
  gate.unitary(1, 2) = s;
  gate.unitary(2, 1) = s;
  return gate;
}

double state_fidelity(const DensityMatrix& rho, const Vector4c& target) {
  if (std::abs(target.norm() - 1.0) > 1e-8) throw ValidationError("state_fidelity: target is not normalized");
  const double overlap = (target.adjoint() * rho.matrix() * target)(0, 0).real();
  return std::clamp(std::sqrt(std::max(overlap, 0.0)), 0.0, 1.0);
}

Vector4c basis_state(Basis b) {
  Vector4c v = Vector4c::Zero();
  v(static_cast<int>(b)) = 1.0;
  return v;
}

Vector4c bell_target() {
  Vector4c v = Vector4c::Zero();
  v(0) = v(3) = std::numbers::sqrt2 / 2.0;
  return v;
}

Basis cnot_output(Basis input, int control) {
  if (control != 1 && control != 2) throw ValidationError("cnot_output: control must be 1 or 2");
  const int i = static_cast<int>(input);
  const int control_bit = control == 1 ? 2 : 1;
  const int target_bit = control == 1 ? 1 : 2;
  return static_cast<Basis>((i & control_bit) ? (i ^ target_bit) : i);
}

GateResult run_schedule(const DensityMatrix& rho0, const PulseSchedule& schedule, const SystemParams& params,
                        const Vector4c& target, std::string target_label, double stride_ns) {
  schedule.validate();
  params.validate();
  Trajectory traj;
  double t0 = 0.0;
  DensityMatrix rho = rho0;
  for (const PulseSegment& seg : schedule.segments()) {
    Trajectory part = evolve(rho, seg, params, stride_ns, t0);
    const auto first = traj.empty() ? part.begin() : std::next(part.begin());
    traj.insert(traj.end(), first, part.end());
    rho = part.back().rho;
    t0 += seg.duration_ns;
  }
  const double fidelity = state_fidelity(rho, target);
  return GateResult{rho, std::move(traj), fidelity, std::move(target_label)};
}

}  // namespace dimergate

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

#pragma once

#include <string>
#include <vector>

#include "dimergate/dynamics.hpp"
#include "dimergate/model.hpp"

namespace dimergate {

/// Longest pulse any schedule builder will emit.
inline constexpr double kMaxPulseDurationNs = 1e6;

class PulseSchedule {
 public:
  PulseSchedule() = default;
  explicit PulseSchedule(std::vector<PulseSegment> segments);

  const std::vector<PulseSegment>& segments() const noexcept { return segments_; }
  double total_duration_ns() const;

  /// Non-empty, every segment valid.
  void validate() const;

 private:
  std::vector<PulseSegment> segments_;
};

struct GateResult {
  DensityMatrix final_state;
  Trajectory trajectory;
  double fidelity = 0.0;  // at the end of the schedule
  std::string target_label;
};

enum class DriveAddressing {
  both,         // one laser illuminates both molecules
  target_only,  // only the target molecule's coupling is switched on
};

/// Duration of a rectangular pulse rotating a resonant transition by
/// `angle`: (angle / pi) / (4 * rabi_amp) with rabi_amp in cyclic units, so a
/// 200 MHz pi pulse lasts 1.25 ns.
double pi_pulse_duration(double rabi_amp_mhz, double angle);

/// Single pi pulse on the conditional transition of the target qubit:
/// at w2 - delta + de for control 1, at w1 + delta + de for control 2.
PulseSchedule cnot_schedule(const SystemParams& params, int control, double amp_mhz,
                            DriveAddressing addressing = DriveAddressing::both);

/// pi/2 pulse at w1 followed by the control-1 CNOT pi pulse. Starting from
/// |00> this prepares (|00> + |11>)/sqrt(2). The phase of the second pulse is
/// calibrated on a dissipation-free run so that the final |11><00| coherence
/// is real and positive in the reference frame.
PulseSchedule bell_schedule(const SystemParams& params, double amp_mhz);

/// Gate time pi / (4 V12) with V12 converted to rad/ns.
double xy_gate_time(double v12_mhz);

struct XyGate {
  Matrix4c unitary;
  bool identity_fallback = false;  // v12 == 0
};

/// exp(-i t V12 (XX + YY)) in closed form. The {|01>,|10>} block is
/// cos(2Vt) - i sin(2Vt) sigma_x, so at xy_gate_time |01> -> -i|10>.
XyGate ideal_xy_gate(double v12_mhz, double t_ns);

/// sqrt(<psi|rho|psi>), clamped to [0, 1].
double state_fidelity(const DensityMatrix& rho, const Vector4c& target);

Vector4c basis_state(Basis b);
Vector4c bell_target();  // (|00> + |11>)/sqrt(2)

/// Ideal CNOT image of a computational-basis input.
Basis cnot_output(Basis input, int control);

/// Runs every segment in one fixed reference frame and scores the final
/// state against `target`.
GateResult run_schedule(const DensityMatrix& rho0, const PulseSchedule& schedule, const SystemParams& params,
                        const Vector4c& target, std::string target_label = {}, double stride_ns = 0.01);

}  // namespace dimergate

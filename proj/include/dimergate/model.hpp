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

#include <array>

#include <Eigen/Dense>

#include "dimergate/common.hpp"

namespace dimergate {

/// Physical parameters of the driven molecular dimer, all in cyclic MHz.
///
/// `delta_plus` refers to the reference laser frequency: every Hamiltonian is
/// written in the frame rotating at that frequency.
struct SystemParams {
  double delta_minus = 0.0;  // w1 - w2
  double delta_plus = 0.0;   // w1 + w2 - 2 wL
  double v12 = 0.0;          // dipole-dipole exchange
  double delta_eps = 0.0;    // shift of the doubly-excited level
  double ell1 = 0.0;
  double ell2 = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma12 = 0.0;  // collective decay, may be negative

  // Single-molecule detunings from the reference laser.
  double delta1() const noexcept { return 0.5 * (delta_plus + delta_minus); }
  double delta2() const noexcept { return 0.5 * (delta_plus - delta_minus); }

  /// Throws ValidationError naming the first violated invariant.
  void validate() const;

  bool operator==(const SystemParams&) const = default;
};

struct DipoleGeometry {
  Eigen::Vector3d d1_hat{0.0, 0.0, 1.0};
  Eigen::Vector3d d2_hat{0.0, 0.0, 1.0};
  Eigen::Vector3d r12_hat{1.0, 0.0, 0.0};
  double r12_nm = 1.0;
  double n_index = 1.0;
  double lambda0_nm = 600.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;

  void validate() const;
};

/// Above this value of k0*r12 the near-field formulas are flagged.
inline constexpr double kNearFieldWarnThreshold = 0.3;

/// 4x4 Hermitian generator in rad/ns, basis {|00>,|01>,|10>,|11>}.
class Hamiltonian {
 public:
  /// Throws ValidationError unless `angular` is Hermitian to 1e-12 relative.
  explicit Hamiltonian(const Matrix4c& angular);

  const Matrix4c& matrix() const noexcept { return m_; }

 private:
  Matrix4c m_;
};

struct EigenSystem {
  std::array<double, 4> energies_mhz{};  // ascending
  Matrix4c vectors;                      // column k is eigenvector k

  /// alpha_ij of eigenvector `k` on basis state `b`.
  cplx coefficient(int k, Basis b) const { return vectors(static_cast<int>(b), k); }
};

struct DressedCoefficients {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double splitting_mhz = 0.0;  // X = sqrt(dm^2 + 4 V^2)
  bool degenerate_limit = false;
};

struct NearFieldCoupling {
  double v12_mhz = 0.0;
  double gamma12_mhz = 0.0;
  double z = 0.0;
  double k0_r12 = 0.0;
  bool outside_near_field = false;
};

struct ConditionalFrequencies {
  double delta_shift = 0.0;     // V^2 / dm
  double omega12_offset = 0.0;  // drive at w2 - delta + de, relative to wL
  double omega21_offset = 0.0;  // drive at w1 + delta + de, relative to wL
};

/// Builds the dimer Hamiltonian in the frame co-rotating with a drive at
/// `drive_offset_mhz` above the reference laser.
///
/// With N the number of excitations and c = drive_offset_mhz the diagonal is
///
///   |00>  -dp/2
///   |01>  -dm/2      - c
///   |10>  +dm/2      - c
///   |11>  +dp/2 + de - 2c
///
/// (everything times 2*pi*1e-3). The laser couples states that differ in one
/// molecule with <e|H|g> = ell * exp(-i*phase), and V12 couples |01> and |10>.
Hamiltonian build_hamiltonian(const SystemParams& params, double drive_offset_mhz = 0.0,
                              double drive_phase = 0.0);

/// Sorted eigendecomposition. Each eigenvector is rotated so that its
/// largest-magnitude entry is real and positive; ties go to the lowest index.
EigenSystem eigensystem(const Hamiltonian& h);

/// Closed-form single-excitation dressing of the undriven dimer.
DressedCoefficients dressed_coefficients(double delta_minus, double v12);

NearFieldCoupling near_field_coupling(const DipoleGeometry& geom);

/// Throws ValidationError when delta_minus == 0.
ConditionalFrequencies conditional_frequencies(const SystemParams& params);

}  // namespace dimergate

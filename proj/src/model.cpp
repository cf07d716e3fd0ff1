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

#include "dimergate/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace dimergate {

namespace {

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw ValidationError(std::string(name) + " must be finite");
  }
}

void require_unit(const Eigen::Vector3d& v, const char* name) {
  if (!v.allFinite() || std::abs(v.norm() - 1.0) > 1e-12) {
    throw ValidationError(std::string(name) + " must be a unit vector (|v| = 1 within 1e-12)");
  }
}

}  // namespace

void SystemParams::validate() const {
  require_finite(delta_minus, "delta_minus");
  require_finite(delta_plus, "delta_plus");
  require_finite(v12, "v12");
  require_finite(delta_eps, "delta_eps");
  require_finite(ell1, "ell1");
  require_finite(ell2, "ell2");
  require_finite(gamma1, "gamma1");
  require_finite(gamma2, "gamma2");
  require_finite(gamma12, "gamma12");
  if (gamma1 < 0.0) throw ValidationError("gamma1 must be >= 0");
  if (gamma2 < 0.0) throw ValidationError("gamma2 must be >= 0");
  const double bound = std::sqrt(gamma1 * gamma2);
  if (std::abs(gamma12) > bound * (1.0 + 1e-12)) {
    throw ValidationError("|gamma12| <= sqrt(gamma1*gamma2) violated: |" + std::to_string(gamma12) +
                          "| > " + std::to_string(bound));
  }
}

void DipoleGeometry::validate() const {
  require_unit(d1_hat, "d1_hat");
  require_unit(d2_hat, "d2_hat");
  require_unit(r12_hat, "r12_hat");
  require_finite(r12_nm, "r12_nm");
  require_finite(n_index, "n_index");
  require_finite(lambda0_nm, "lambda0_nm");
  require_finite(gamma1, "gamma1");
  require_finite(gamma2, "gamma2");
  if (r12_nm <= 0.0) throw ValidationError("r12_nm must be > 0");
  if (n_index < 1.0) throw ValidationError("n_index must be >= 1");
  if (lambda0_nm <= 0.0) throw ValidationError("lambda0_nm must be > 0");
  if (gamma1 < 0.0 || gamma2 < 0.0) throw ValidationError("gamma1, gamma2 must be >= 0");
}

Hamiltonian::Hamiltonian(const Matrix4c& angular) : m_(angular) {
  if (!m_.allFinite()) throw ValidationError("Hamiltonian has non-finite entries");
  const double scale = std::max(m_.cwiseAbs().maxCoeff(), 1.0);
  const double asym = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) {
    throw ValidationError("Hamiltonian is not Hermitian (|H - H^dagger|_max = " + std::to_string(asym) +
                          ")");
  }
}

Hamiltonian build_hamiltonian(const SystemParams& params, double drive_offset_mhz, double drive_phase) {
  params.validate();
  require_finite(drive_offset_mhz, "drive_offset_mhz");
  require_finite(drive_phase, "drive_phase");

  Matrix4c h = Matrix4c::Zero();
  h(0, 0) = -0.5 * params.delta_plus;
  h(1, 1) = -0.5 * params.delta_minus;
  h(2, 2) = 0.5 * params.delta_minus;
  h(3, 3) = 0.5 * params.delta_plus + params.delta_eps;
  for (int k = 0; k < 4; ++k) {
    h(k, k) -= excitation_number(k) * drive_offset_mhz;
  }

  const cplx phase = std::polar(1.0, -drive_phase);
  // molecule 1 flips the high bit, molecule 2 the low bit
  const auto couple = [&](int ground, int excited, double ell) {
    h(excited, ground) = ell * phase;
    h(ground, excited) = std::conj(h(excited, ground));
  };
  couple(0, 2, params.ell1);
  couple(1, 3, params.ell1);
  couple(0, 1, params.ell2);
  couple(2, 3, params.ell2);

  h(1, 2) = params.v12;
  h(2, 1) = params.v12;
  return Hamiltonian(h * kRadPerNsPerMHz);
}

EigenSystem eigensystem(const Hamiltonian& h) {
  Eigen::SelfAdjointEigenSolver<Matrix4c> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigensystem: Hermitian eigensolver did not converge");
  }
  EigenSystem out;
  out.vectors = solver.eigenvectors();
  for (int k = 0; k < 4; ++k) {
    out.energies_mhz[k] = to_mhz(solver.eigenvalues()(k));
    auto col = out.vectors.col(k);
    int pivot = 0;
    double best = std::abs(col(0));
    for (int i = 1; i < 4; ++i) {
      if (std::abs(col(i)) > best + 1e-12) {
        best = std::abs(col(i));
        pivot = i;
      }
    }
    const cplx unwind = std::conj(col(pivot)) / std::abs(col(pivot));
    col *= unwind;
    col(pivot) = cplx(std::abs(col(pivot)), 0.0);
  }
  return out;
}

DressedCoefficients dressed_coefficients(double delta_minus, double v12) {
  require_finite(delta_minus, "delta_minus");
  require_finite(v12, "v12");
  DressedCoefficients out;
  out.splitting_mhz = std::sqrt(delta_minus * delta_minus + 4.0 * v12 * v12);
  if (delta_minus == 0.0) {
    out.alpha1 = out.alpha2 = std::numbers::sqrt2 / 2.0;
    out.degenerate_limit = true;
    return out;
  }
  // (Y +- 1)/(2Y) with Y = X/dm equals (X +- dm)/(2X); the difference of the
  // two nearly equal terms is rewritten as 4V^2/(X + |dm|) to avoid cancellation.
  const double x = out.splitting_mhz;
  const double large = x + std::abs(delta_minus);
  const double small = 4.0 * v12 * v12 / large;
  const double plus = delta_minus > 0.0 ? large : small;
  const double minus = delta_minus > 0.0 ? small : large;
  out.alpha1 = std::sqrt(plus / (2.0 * x));
  out.alpha2 = std::sqrt(minus / (2.0 * x));
  return out;
}

NearFieldCoupling near_field_coupling(const DipoleGeometry& geom) {
  geom.validate();
  NearFieldCoupling out;
  const double k0 = 2.0 * std::numbers::pi / geom.lambda0_nm;
  out.k0_r12 = k0 * geom.r12_nm;
  out.z = geom.n_index * out.k0_r12;
  if (!(out.z > 0.0)) throw ValidationError("near_field_coupling: z = n k0 r12 is zero");
  out.outside_near_field = out.k0_r12 > kNearFieldWarnThreshold;

  const double d1d2 = std::clamp(geom.d1_hat.dot(geom.d2_hat), -1.0, 1.0);
  const double kappa = d1d2 - 3.0 * geom.d1_hat.dot(geom.r12_hat) * geom.d2_hat.dot(geom.r12_hat);
  const double root = std::sqrt(geom.gamma1 * geom.gamma2);
  out.v12_mhz = 3.0 * root / (8.0 * std::numbers::pi * out.z * out.z * out.z) * kappa;
  out.gamma12_mhz = root * d1d2;
  return out;
}

ConditionalFrequencies conditional_frequencies(const SystemParams& params) {
  params.validate();
  if (params.delta_minus == 0.0) {
    throw ValidationError("conditional_frequencies: delta_minus = 0 leaves V12^2/delta_minus undefined");
  }
  ConditionalFrequencies out;
  out.delta_shift = params.v12 * params.v12 / params.delta_minus;
  // |10> and |01> are pushed to +-(dm/2 + delta); |11> sits at dp/2 + de.
  out.omega12_offset = params.delta2() - out.delta_shift + params.delta_eps;
  out.omega21_offset = params.delta1() + out.delta_shift + params.delta_eps;
  return out;
}

}  // namespace dimergate

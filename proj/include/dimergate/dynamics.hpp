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

#include <vector>

#include "dimergate/common.hpp"
#include "dimergate/model.hpp"

namespace dimergate {

struct StateDiagnostics {
  double trace_error = 0.0;        // |Tr rho - 1|
  double hermiticity_error = 0.0;  // |rho - rho^dagger|_max
  double min_eigenvalue = 0.0;

  bool within(double trace_tol, double herm_tol, double min_eig) const noexcept {
    return trace_error <= trace_tol && hermiticity_error <= herm_tol && min_eigenvalue >= min_eig;
  }
};

StateDiagnostics diagnose(const Matrix4c& rho);

/// Two-molecule density matrix in the {|00>,|01>,|10>,|11>} basis.
///
/// Construction checks Hermiticity and trace to 1e-10 and positivity to
/// -1e-7; no renormalization is ever applied.
class DensityMatrix {
 public:
  explicit DensityMatrix(const Matrix4c& rho);

  static DensityMatrix basis(Basis b);
  /// |psi><psi|; `psi` must be normalized to 1e-8.
  static DensityMatrix pure(const Vector4c& psi);
  static DensityMatrix maximally_mixed();

  const Matrix4c& matrix() const noexcept { return m_; }
  cplx operator()(int row, int col) const { return m_(row, col); }
  double purity() const { return (m_ * m_).trace().real(); }

 private:
  Matrix4c m_;
};

/// Dense superoperator acting on column-stacked density matrices:
/// vec(rho)[i + 4*j] = rho(i, j), so vec(A rho B) = (B^T kron A) vec(rho).
class Liouvillian {
 public:
  explicit Liouvillian(const Matrix16c& m) : m_(m) {}

  const Matrix16c& matrix() const noexcept { return m_; }
  Matrix4c apply(const Matrix4c& rho) const;

 private:
  Matrix16c m_;
};

Vector16c vectorize(const Matrix4c& rho);
Matrix4c unvectorize(const Vector16c& v);

/// Lowering operator S_i^- of molecule 1 or 2.
Matrix4c lowering(int molecule);

/// Collective dissipator sum_ij G_ij (S_j^- rho S_i^+ - {S_i^+ S_j^-, rho}/2)
/// with G = [[g1, g12], [g12, g2]] converted to rad/ns.
Matrix16c dissipator(const SystemParams& params);

/// -i[H, .] plus the collective dissipator of `params`.
Liouvillian build_liouvillian(const SystemParams& params, const Hamiltonian& h);

/// One piecewise-constant laser segment. The field seen by molecule k in the
/// reference frame is amp_k * exp(-i (2 pi offset t + phase)) on the
/// |e><g| entries, with t measured from the start of the schedule.
struct PulseSegment {
  double duration_ns = 0.0;
  double freq_offset_mhz = 0.0;
  double amp1_mhz = 0.0;
  double amp2_mhz = 0.0;
  double phase = 0.0;

  void validate() const;
};

struct TrajectorySample {
  double t_ns;
  DensityMatrix rho;
};

using Trajectory = std::vector<TrajectorySample>;

/// Exact propagation with exp(L * stride), sampled at t0, t0 + stride, ...,
/// and at t0 + duration.
Trajectory evolve(const DensityMatrix& rho0, const Liouvillian& l, double duration_ns, double stride_ns,
                  double t0_ns = 0.0);

/// Propagates through one drive segment in the reference frame. The drive
/// amplitudes come from `segment`; params.ell1/ell2 are ignored. A zero
/// offset uses exact exponential stepping, otherwise Dormand-Prince 5(4)
/// with abs/rel tolerance 1e-12/1e-10. Throws IntegrationError when the step
/// size underflows.
Trajectory evolve(const DensityMatrix& rho0, const PulseSegment& segment, const SystemParams& params,
                  double stride_ns, double t0_ns = 0.0);

/// Null-space steady state of `l` with unit trace.
///
/// Throws NumericalError when the second-smallest singular value of L is
/// below 1e-6 * |L|_2 (non-unique steady state), or when the residual
/// |L rho|_max exceeds 1e-8.
DensityMatrix steady_state(const Liouvillian& l);

/// Diagonal element rho(b, b), clamped to [0, 1].
double population(const DensityMatrix& rho, Basis b);

}  // namespace dimergate

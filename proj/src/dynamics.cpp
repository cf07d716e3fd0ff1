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

#include "dimergate/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <boost/numeric/odeint.hpp>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace dimergate {

namespace {

constexpr double kTraceTol = 1e-10;
constexpr double kHermTol = 1e-10;
constexpr double kMinEig = -1e-7;

DensityMatrix checked_state(const Matrix4c& rho, double t) {
  const StateDiagnostics d = diagnose(rho);
  if (!d.within(kTraceTol, kHermTol, kMinEig)) {
    throw NumericalError("evolve: state left the physical set at t = " + std::to_string(t) +
                         " ns (trace error " + std::to_string(d.trace_error) + ", min eigenvalue " +
                         std::to_string(d.min_eigenvalue) + ")");
  }
  return DensityMatrix(rho);
}

// Sample times t0, t0 + stride, ..., t0 + duration with the last one exact.
std::vector<double> sample_times(double t0, double duration, double stride) {
  std::vector<double> ts{t0};
  for (long k = 1;; ++k) {
    const double dt = static_cast<double>(k) * stride;
    if (dt >= duration - 1e-9 * stride) break;
    ts.push_back(t0 + dt);
  }
  ts.push_back(t0 + duration);
  return ts;
}

void check_times(double duration, double stride) {
  if (!std::isfinite(duration) || duration <= 0.0) throw ValidationError("evolve: duration must be > 0");
  if (!std::isfinite(stride) || stride <= 0.0) throw ValidationError("evolve: output stride must be > 0");
}

}  // namespace

StateDiagnostics diagnose(const Matrix4c& rho) {
  StateDiagnostics d;
  d.trace_error = std::abs(rho.trace() - 1.0);
  d.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  const Matrix4c herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4c> solver(herm, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = solver.eigenvalues().minCoeff();
  return d;
}

DensityMatrix::DensityMatrix(const Matrix4c& rho) : m_(rho) {
  if (!m_.allFinite()) throw ValidationError("density matrix has non-finite entries");
  const StateDiagnostics d = diagnose(m_);
  if (d.hermiticity_error > kHermTol) throw ValidationError("density matrix is not Hermitian");
  if (d.trace_error > kTraceTol) throw ValidationError("density matrix trace differs from 1");
  if (d.min_eigenvalue < kMinEig) throw ValidationError("density matrix has a negative eigenvalue");
}

DensityMatrix DensityMatrix::basis(Basis b) {
  Matrix4c m = Matrix4c::Zero();
  const int i = static_cast<int>(b);
  m(i, i) = 1.0;
  return DensityMatrix(m);
}

DensityMatrix DensityMatrix::pure(const Vector4c& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-8) throw ValidationError("pure state must be normalized");
  return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed() { return DensityMatrix(Matrix4c::Identity() / 4.0); }

Vector16c vectorize(const Matrix4c& rho) { return Eigen::Map<const Vector16c>(rho.data()); }

Matrix4c unvectorize(const Vector16c& v) { return Eigen::Map<const Matrix4c>(v.data()); }

Matrix4c Liouvillian::apply(const Matrix4c& rho) const { return unvectorize(m_ * vectorize(rho)); }

Matrix4c lowering(int molecule) {
  Matrix4c s = Matrix4c::Zero();
  if (molecule == 1) {
    s(0, 2) = 1.0;
    s(1, 3) = 1.0;
  } else if (molecule == 2) {
    s(0, 1) = 1.0;
    s(2, 3) = 1.0;
  } else {
    throw ValidationError("molecule index must be 1 or 2");
  }
  return s;
}

Matrix16c dissipator(const SystemParams& params) {
  params.validate();
  const Matrix4c id = Matrix4c::Identity();
  const std::array<Matrix4c, 2> lower{lowering(1), lowering(2)};
  const double rates[2][2] = {{params.gamma1, params.gamma12}, {params.gamma12, params.gamma2}};

  Matrix16c d = Matrix16c::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (rates[i][j] == 0.0) continue;
      const Matrix4c raise_i = lower[i].adjoint();
      const Matrix4c number = raise_i * lower[j];
      Matrix16c term = Eigen::kroneckerProduct(raise_i.transpose(), lower[j]);
      term -= 0.5 * Matrix16c(Eigen::kroneckerProduct(id, number));
      term -= 0.5 * Matrix16c(Eigen::kroneckerProduct(number.transpose(), id));
      d += to_angular(rates[i][j]) * term;
    }
  }
  return d;
}

Liouvillian build_liouvillian(const SystemParams& params, const Hamiltonian& h) {
  const Matrix4c id = Matrix4c::Identity();
  const Matrix4c& hm = h.matrix();
  Matrix16c l = cplx(0.0, -1.0) * (Matrix16c(Eigen::kroneckerProduct(id, hm)) -
                                   Matrix16c(Eigen::kroneckerProduct(hm.transpose(), id)));
  l += dissipator(params);
  return Liouvillian(l);
}

void PulseSegment::validate() const {
  if (!std::isfinite(duration_ns) || duration_ns <= 0.0) {
    throw ValidationError("pulse segment duration must be > 0");
  }
  if (!std::isfinite(freq_offset_mhz) || !std::isfinite(amp1_mhz) || !std::isfinite(amp2_mhz) ||
      !std::isfinite(phase)) {
    throw ValidationError("pulse segment fields must be finite");
  }
}

Trajectory evolve(const DensityMatrix& rho0, const Liouvillian& l, double duration_ns, double stride_ns,
                  double t0_ns) {
  check_times(duration_ns, stride_ns);
  const std::vector<double> ts = sample_times(t0_ns, duration_ns, stride_ns);

  Trajectory out;
  out.reserve(ts.size());
  out.push_back({ts.front(), rho0});

  const Matrix16c step = (l.matrix() * stride_ns).exp();
  Vector16c v = vectorize(rho0.matrix());
  for (std::size_t k = 1; k < ts.size(); ++k) {
    const double dt = ts[k] - ts[k - 1];
    if (k + 1 < ts.size()) {
      v = step * v;
    } else {
      v = Matrix16c((l.matrix() * dt).exp()) * v;
    }
    out.push_back({ts[k], checked_state(unvectorize(v), ts[k])});
  }
  return out;
}

Trajectory evolve(const DensityMatrix& rho0, const PulseSegment& segment, const SystemParams& params,
                  double stride_ns, double t0_ns) {
  segment.validate();
  check_times(segment.duration_ns, stride_ns);

  SystemParams driven = params;
  driven.ell1 = segment.amp1_mhz;
  driven.ell2 = segment.amp2_mhz;

  if (segment.freq_offset_mhz == 0.0) {
    const Liouvillian l = build_liouvillian(driven, build_hamiltonian(driven, 0.0, segment.phase));
    return evolve(rho0, l, segment.duration_ns, stride_ns, t0_ns);
  }

  // H(t) = H0 + exp(-i theta) R + exp(i theta) R^dagger with R the |e><g| part
  // of the drive and theta = w t + phase.
  SystemParams bare = params;
  bare.ell1 = bare.ell2 = 0.0;
  const Matrix4c h0 = build_hamiltonian(bare).matrix();
  const Matrix4c raise = to_angular(segment.amp1_mhz) * lowering(1).adjoint() +
                         to_angular(segment.amp2_mhz) * lowering(2).adjoint();
  const Matrix16c diss = dissipator(params);
  const double omega = to_angular(segment.freq_offset_mhz);
  const double phase = segment.phase;

  using State = std::array<double, 32>;
  const auto rhs = [&](const State& x, State& dxdt, double t) {
    const Eigen::Map<const Vector16c> v(reinterpret_cast<const cplx*>(x.data()));
    Eigen::Map<Vector16c> dv(reinterpret_cast<cplx*>(dxdt.data()));
    const Matrix4c rho = unvectorize(v);
    const cplx field = std::polar(1.0, -(omega * t + phase));
    const Matrix4c h = h0 + field * raise + std::conj(field) * raise.adjoint();
    const Matrix4c comm = h * rho - rho * h;
    dv = vectorize(cplx(0.0, -1.0) * comm) + diss * v;
  };

  namespace odeint = boost::numeric::odeint;
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(1e-12, 1e-10);

  State x{};
  Eigen::Map<Vector16c>(reinterpret_cast<cplx*>(x.data())) = vectorize(rho0.matrix());

  const std::vector<double> ts = sample_times(t0_ns, segment.duration_ns, stride_ns);
  Trajectory out;
  out.reserve(ts.size());
  out.push_back({ts.front(), rho0});

  const double min_step = 1e-14 * std::max(1.0, std::abs(ts.back()));
  constexpr long kMaxSteps = 50'000'000;
  long steps = 0;
  double t = ts.front();
  double dt = std::min(stride_ns, 1e-3);
  for (std::size_t k = 1; k < ts.size(); ++k) {
    const double target = ts[k];
    while (t < target) {
      const bool hits = dt >= target - t;
      double trial = hits ? target - t : dt;
      if (stepper.try_step(rhs, x, t, trial) == odeint::success) {
        if (hits) t = target;  // no round-off drift past the sample point
      } else if (trial < min_step) {
        throw IntegrationError("evolve: step size underflow", t);
      }
      dt = trial;
      if (++steps > kMaxSteps) throw IntegrationError("evolve: step budget exhausted", t);
    }
    const Eigen::Map<const Vector16c> v(reinterpret_cast<const cplx*>(x.data()));
    out.push_back({target, checked_state(unvectorize(v), target)});
  }
  return out;
}

DensityMatrix steady_state(const Liouvillian& l) {
  const Matrix16c& m = l.matrix();
  Eigen::JacobiSVD<Matrix16c> svd(m);
  const auto& sv = svd.singularValues();  // descending
  if (!(sv(14) > 1e-6 * sv(0))) {
    throw NumericalError(
        "steady_state: Liouvillian has a degenerate null space (non-unique steady state); "
        "use time-domain evolution instead");
  }

  Matrix16c a = m;
  Vector16c b = Vector16c::Zero();
  a.row(0).setZero();
  for (int i = 0; i < 4; ++i) a(0, i + 4 * i) = 1.0;
  b(0) = 1.0;
  const Vector16c v = a.fullPivLu().solve(b);

  const Matrix4c raw = unvectorize(v);
  const Matrix4c rho = 0.5 * (raw + raw.adjoint());
  const double residual = (m * vectorize(rho)).cwiseAbs().maxCoeff();
  if (!(residual <= 1e-8)) {
    throw NumericalError("steady_state: residual |L rho|_max = " + std::to_string(residual) +
                         " exceeds 1e-8");
  }
  try {
    return DensityMatrix(rho);
  } catch (const ValidationError& e) {
    throw NumericalError(std::string("steady_state: solution is not a valid state: ") + e.what());
  }
}

double population(const DensityMatrix& rho, Basis b) {
  const int i = static_cast<int>(b);
  return std::clamp(rho(i, i).real(), 0.0, 1.0);
}

}  // namespace dimergate

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

// Test-only reference routes. Nothing here calls the library's superoperator
// or integrator code, so the tests can compare two independent paths.
#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "dimergate/common.hpp"
#include "dimergate/dynamics.hpp"
#include "dimergate/model.hpp"

namespace dimergate::oracle {

inline constexpr double kTwoPiMilli = 2.0 * std::numbers::pi * 1e-3;

// sigma^- = |g><e| on one qubit, basis (g, e).
inline Eigen::Matrix2cd sigma_minus() {
  Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
  s(0, 1) = 1.0;
  return s;
}

inline Matrix4c kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Matrix4c k;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) k(2 * i + p, 2 * j + q) = a(i, j) * b(p, q);
  return k;
}

inline Matrix4c lower1() { return kron2(sigma_minus(), Eigen::Matrix2cd::Identity()); }
inline Matrix4c lower2() { return kron2(Eigen::Matrix2cd::Identity(), sigma_minus()); }

// Lindblad right-hand side written term by term; `h` in rad/ns, rates in MHz.
inline Matrix4c lindblad_rhs(const Matrix4c& h, const SystemParams& p, const Matrix4c& rho) {
  const cplx i(0.0, 1.0);
  Matrix4c out = -i * (h * rho - rho * h);
  const Matrix4c s[2] = {lower1(), lower2()};
  const double g[2][2] = {{p.gamma1, p.gamma12}, {p.gamma12, p.gamma2}};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const Matrix4c up = s[a].adjoint();
      const Matrix4c n = up * s[b];
      out += g[a][b] * kTwoPiMilli * (s[b] * rho * up - 0.5 * (n * rho + rho * n));
    }
  }
  return out;
}

// Superoperator assembled column by column from lindblad_rhs (column stacking).
inline Matrix16c superoperator(const Matrix4c& h, const SystemParams& p) {
  Matrix16c l;
  for (int c = 0; c < 4; ++c) {
    for (int r = 0; r < 4; ++r) {
      Matrix4c e = Matrix4c::Zero();
      e(r, c) = 1.0;
      const Matrix4c col = lindblad_rhs(h, p, e);
      for (int jj = 0; jj < 4; ++jj)
        for (int ii = 0; ii < 4; ++ii) l(ii + 4 * jj, r + 4 * c) = col(ii, jj);
    }
  }
  return l;
}

inline Vector16c vec(const Matrix4c& m) {
  Vector16c v;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) v(i + 4 * j) = m(i, j);
  return v;
}

inline Matrix4c unvec(const Vector16c& v) {
  Matrix4c m;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) m(i, j) = v(i + 4 * j);
  return m;
}

// Rotating-frame Hamiltonian written out by hand in rad/ns, drive frame at
// offset c (MHz), drive amplitudes a1/a2, phase convention <e|H|g> = a e^{-i phase}.
inline Matrix4c hamiltonian(const SystemParams& p, double a1, double a2, double c, double phase) {
  Matrix4c h = Matrix4c::Zero();
  h(0, 0) = -p.delta_plus / 2;
  h(1, 1) = -p.delta_minus / 2 - c;
  h(2, 2) = p.delta_minus / 2 - c;
  h(3, 3) = p.delta_plus / 2 + p.delta_eps - 2 * c;
  const cplx e = std::polar(1.0, -phase);
  const Matrix4c r = a1 * e * lower1().adjoint() + a2 * e * lower2().adjoint();
  h += r + r.adjoint();
  h(1, 2) += p.v12;
  h(2, 1) += p.v12;
  return h * kTwoPiMilli;
}

// Exact propagation of one detuned segment: evolve in the frame co-rotating
// with the drive, then rotate back by exp(-i w t N) to the reference frame.
inline Matrix4c drive_frame_route(const Matrix4c& rho_ref0, const PulseSegment& seg, const SystemParams& p,
                                  double t0, double duration) {
  const double w = seg.freq_offset_mhz * kTwoPiMilli;
  const auto rot = [&](double t) {
    Matrix4c r = Matrix4c::Zero();
    for (int k = 0; k < 4; ++k) r(k, k) = std::polar(1.0, -w * t * excitation_number(k));
    return r;
  };
  const Matrix4c r0 = rot(t0);
  const Matrix4c rho_d0 = r0.adjoint() * rho_ref0 * r0;
  const Matrix16c l = superoperator(hamiltonian(p, seg.amp1_mhz, seg.amp2_mhz, seg.freq_offset_mhz, seg.phase), p);
  const Matrix4c rho_d = unvec(Matrix16c((l * duration).exp()) * vec(rho_d0));
  const Matrix4c r1 = rot(t0 + duration);
  return r1 * rho_d * r1.adjoint();
}

inline Eigen::Vector3d random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Vector3d v(n(rng), n(rng), n(rng));
  return v.normalized();
}

inline SystemParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SystemParams p;
  p.delta_minus = (u(rng) < 0.5 ? -1 : 1) * (200.0 + 2800.0 * u(rng));
  p.delta_plus = -3000.0 + 6000.0 * u(rng);
  p.v12 = -1000.0 + 2000.0 * u(rng);
  p.delta_eps = -300.0 + 600.0 * u(rng);
  p.ell1 = 400.0 * u(rng);
  p.ell2 = 400.0 * u(rng);
  p.gamma1 = 20.0 + 80.0 * u(rng);
  p.gamma2 = 20.0 + 80.0 * u(rng);
  p.gamma12 = (-0.5 + u(rng)) * std::sqrt(p.gamma1 * p.gamma2);
  return p;
}

}  // namespace dimergate::oracle

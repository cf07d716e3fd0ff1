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

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace dimergate {

inline constexpr const char* kVersion = "0.1.0";

using cplx = std::complex<double>;
using Matrix4c = Eigen::Matrix4cd;
using Vector4c = Eigen::Vector4cd;
using Matrix16c = Eigen::Matrix<cplx, 16, 16>;
using Vector16c = Eigen::Matrix<cplx, 16, 1>;

// User-facing frequencies are cyclic MHz and times are ns. Internally every
// generator is in angular units of rad/ns.
inline constexpr double kRadPerNsPerMHz = 2.0 * std::numbers::pi * 1e-3;

constexpr double to_angular(double mhz) noexcept { return mhz * kRadPerNsPerMHz; }
constexpr double to_mhz(double rad_per_ns) noexcept { return rad_per_ns / kRadPerNsPerMHz; }

// Basis ordering is |q1 q2> with 0 = ground, 1 = excited:
// index 0 = |00>, 1 = |01>, 2 = |10>, 3 = |11>.
enum class Basis : int { gg = 0, ge = 1, eg = 2, ee = 3 };

constexpr int excitation_number(int index) noexcept { return (index & 1) + ((index >> 1) & 1); }

/// Bad input: a violated invariant or a malformed value.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not produce a trustworthy result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive integration gave up; `last_good_t()` is the last accepted time.
class IntegrationError : public NumericalError {
 public:
  IntegrationError(const std::string& what, double last_good_t)
      : NumericalError(what), last_good_t_(last_good_t) {}
  double last_good_t() const noexcept { return last_good_t_; }

 private:
  double last_good_t_;
};

}  // namespace dimergate

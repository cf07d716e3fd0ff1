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

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dimergate/model.hpp"

namespace dimergate {

enum class SweepVariable { delta_minus, delta_plus_half, delta_eps, ell };

std::string_view to_string(SweepVariable v);
/// Throws ValidationError for names outside the closed set.
SweepVariable parse_sweep_variable(std::string_view name);

/// Returns `base` with the swept quantity set to `value` (ell sets both
/// couplings, delta_plus_half sets delta_plus = 2 * value).
SystemParams apply_sweep_value(SystemParams base, SweepVariable var, double value);

struct SweepSpec {
  SweepVariable variable = SweepVariable::delta_minus;
  double start = 0.0;
  double stop = 0.0;
  int points = 2;
  SystemParams base;
  /// Column selectors; empty means the default set of the sweep kind.
  std::vector<std::string> observables;

  void validate() const;
  std::vector<double> grid() const;  // inclusive linspace
};

struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> provenance;

  /// Throws ValidationError if `name` is not a column.
  std::size_t index_of(std::string_view name) const;
  std::vector<double> column(std::string_view name) const;
};

/// Per grid point: four eigenenergies (E1_mhz..E4_mhz, ascending) and the
/// phase-fixed coefficients a00_k, a01_k, a10_k, a11_k of each eigenvector.
/// The drive phase is zero, so coefficients are real and reported signed.
SweepTable eigen_sweep(const SweepSpec& spec, int threads = 1);

/// Per grid point: steady-state populations p00, p01, p10, p11. The
/// selector "coherences" adds |rho_ij| for i < j as columns cIJ_KL.
SweepTable spectrum_sweep(const SweepSpec& spec, int threads = 1);

enum class GateKind { cnot, bell };

/// Runs a gate at every grid point and reports the final p00..p11 and the
/// fidelity. cnot starts from |10> with qubit 1 as control and amplitude
/// ell2; bell starts from |00> with amplitude ell1.
SweepTable gate_sweep(const SweepSpec& spec, GateKind kind, int threads = 1);

struct Peak {
  double location = 0.0;
  double height = 0.0;
  double fwhm = 0.0;
};

/// Parabolic refinement of the discrete maximum of `column` (optionally
/// restricted to rows whose first column lies in [lo, hi]). FWHM comes from
/// linear interpolation of the half-height crossings and is NaN when either
/// crossing lies outside the window. Throws NumericalError if the maximum
/// sits on the window edge or the column is flat.
Peak peak_finder(const SweepTable& table, std::string_view column,
                 std::optional<std::pair<double, double>> window = std::nullopt);

/// Provenance entries echoing every field of `params` under config key names.
std::vector<std::pair<std::string, std::string>> params_provenance(const SystemParams& params);

/// 0 means std::thread::hardware_concurrency().
int resolve_threads(int requested);

}  // namespace dimergate

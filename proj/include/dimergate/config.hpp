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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dimergate/model.hpp"
#include "dimergate/sweeps.hpp"

namespace dimergate {

/// Contents of a `key = value` config file. Every field mirrors one key;
/// absent keys stay empty so a config can be re-emitted exactly.
struct Config {
  std::optional<double> delta_minus_mhz;
  std::optional<double> delta_plus_half_mhz;
  std::optional<double> v12_mhz;
  std::optional<double> delta_eps_mhz;
  std::optional<double> ell1_mhz;
  std::optional<double> ell2_mhz;
  std::optional<double> gamma1_mhz;
  std::optional<double> gamma2_mhz;
  std::optional<double> gamma12_mhz;

  std::optional<double> r12_nm;
  std::optional<double> n_index;
  std::optional<double> lambda0_nm;
  std::optional<std::array<double, 3>> d1;
  std::optional<std::array<double, 3>> d2;
  std::optional<std::array<double, 3>> r12_axis;

  std::optional<std::string> sweep_var;
  std::optional<double> sweep_start;
  std::optional<double> sweep_stop;
  std::optional<int> sweep_points;

  /// Sets one key from its textual value. Throws ValidationError for
  /// unknown keys and malformed values.
  void set(std::string_view key, std::string_view value);

  /// Ordered `key, value` pairs of every present key, formatted so that
  /// parsing them back yields an identical Config.
  std::vector<std::pair<std::string, std::string>> entries() const;
  std::string to_text() const;

  bool has_geometry() const;
  /// Geometry block with unit-normalized direction vectors.
  std::optional<DipoleGeometry> geometry() const;
  /// Validated physical parameters. When v12_mhz is absent the geometry
  /// block supplies v12 (and gamma12 unless given).
  SystemParams params() const;
  /// Sweep from the sweep_* keys, or nullopt if none are set.
  std::optional<SweepSpec> sweep() const;

  /// Throws ValidationError listing missing required keys or the first
  /// violated invariant.
  void validate() const;

  bool operator==(const Config&) const = default;
};

/// Known config key names in canonical order.
const std::vector<std::string>& config_keys();

Config parse_config_text(std::string_view text, std::string_view source = "<config>");
Config parse_config(const std::filesystem::path& path);

/// Rebuilds a Config from CSV provenance entries, ignoring non-config keys.
Config config_from_provenance(const std::vector<std::pair<std::string, std::string>>& provenance);

}  // namespace dimergate

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

#include "dimergate/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>
#include <variant>

#include "dimergate/table_io.hpp"

namespace dimergate {

namespace {

using Vec3 = std::array<double, 3>;
using Field = std::variant<std::optional<double> Config::*, std::optional<Vec3> Config::*,
                           std::optional<std::string> Config::*, std::optional<int> Config::*>;

struct KeyDesc {
  const char* name;
  Field field;
};

const KeyDesc kKeys[] = {
    {"delta_minus_mhz", &Config::delta_minus_mhz},
    {"delta_plus_half_mhz", &Config::delta_plus_half_mhz},
    {"v12_mhz", &Config::v12_mhz},
    {"delta_eps_mhz", &Config::delta_eps_mhz},
    {"ell1_mhz", &Config::ell1_mhz},
    {"ell2_mhz", &Config::ell2_mhz},
    {"gamma1_mhz", &Config::gamma1_mhz},
    {"gamma2_mhz", &Config::gamma2_mhz},
    {"gamma12_mhz", &Config::gamma12_mhz},
    {"r12_nm", &Config::r12_nm},
    {"n_index", &Config::n_index},
    {"lambda0_nm", &Config::lambda0_nm},
    {"d1", &Config::d1},
    {"d2", &Config::d2},
    {"r12_axis", &Config::r12_axis},
    {"sweep_var", &Config::sweep_var},
    {"sweep_start", &Config::sweep_start},
    {"sweep_stop", &Config::sweep_stop},
    {"sweep_points", &Config::sweep_points},
};

const char* const kAlwaysRequired[] = {"delta_minus_mhz", "delta_plus_half_mhz", "delta_eps_mhz", "ell1_mhz",
                                       "ell2_mhz",        "gamma1_mhz",          "gamma2_mhz"};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_number(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ValidationError("malformed number for " + std::string(key) + ": '" + s + "'");
  }
  return v;
}

const KeyDesc* find_key(std::string_view key) {
  for (const auto& k : kKeys) {
    if (key == k.name) return &k;
  }
  return nullptr;
}

Eigen::Vector3d unit(const Vec3& v, const char* name) {
  const Eigen::Vector3d e(v[0], v[1], v[2]);
  if (!(e.norm() > 0.0)) throw ValidationError(std::string(name) + " must be a nonzero vector");
  return e.normalized();
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& d : kKeys) k.emplace_back(d.name);
    return k;
  }();
  return keys;
}

void Config::set(std::string_view key, std::string_view value) {
  const KeyDesc* desc = find_key(key);
  if (!desc) throw ValidationError("unknown key '" + std::string(key) + "'");
  std::visit(
      [&](auto member) {
        using T = typename std::remove_reference_t<decltype(this->*member)>::value_type;
        if constexpr (std::is_same_v<T, double>) {
          this->*member = parse_number(key, value);
        } else if constexpr (std::is_same_v<T, int>) {
          const double v = parse_number(key, value);
          if (v != static_cast<int>(v)) throw ValidationError(std::string(key) + " must be an integer");
          this->*member = static_cast<int>(v);
        } else if constexpr (std::is_same_v<T, std::string>) {
          this->*member = trim(value);
        } else {
          Vec3 v{};
          std::stringstream ss{std::string(value)};
          std::string part;
          int n = 0;
          while (std::getline(ss, part, ',')) {
            if (n == 3) throw ValidationError(std::string(key) + " must have 3 components");
            v[n++] = parse_number(key, part);
          }
          if (n != 3) throw ValidationError(std::string(key) + " must have 3 components");
          this->*member = v;
        }
      },
      desc->field);
}

std::vector<std::pair<std::string, std::string>> Config::entries() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& k : kKeys) {
    std::visit(
        [&](auto member) {
          const auto& opt = this->*member;
          if (!opt) return;
          using T = std::decay_t<decltype(*opt)>;
          if constexpr (std::is_same_v<T, double>) {
            out.emplace_back(k.name, format_double(*opt));
          } else if constexpr (std::is_same_v<T, int>) {
            out.emplace_back(k.name, std::to_string(*opt));
          } else if constexpr (std::is_same_v<T, std::string>) {
            out.emplace_back(k.name, *opt);
          } else {
            out.emplace_back(k.name, format_double((*opt)[0]) + "," + format_double((*opt)[1]) + "," +
                                         format_double((*opt)[2]));
          }
        },
        k.field);
  }
  return out;
}

std::string Config::to_text() const {
  std::string s;
  for (const auto& [k, v] : entries()) s += k + " = " + v + "\n";
  return s;
}

bool Config::has_geometry() const {
  return r12_nm || n_index || lambda0_nm || d1 || d2 || r12_axis;
}

std::optional<DipoleGeometry> Config::geometry() const {
  if (!has_geometry()) return std::nullopt;
  std::string missing;
  if (!r12_nm) missing += " r12_nm";
  if (!n_index) missing += " n_index";
  if (!lambda0_nm) missing += " lambda0_nm";
  if (!d1) missing += " d1";
  if (!d2) missing += " d2";
  if (!r12_axis) missing += " r12_axis";
  if (!missing.empty()) throw ValidationError("incomplete geometry block, missing:" + missing);
  DipoleGeometry g;
  g.d1_hat = unit(*d1, "d1");
  g.d2_hat = unit(*d2, "d2");
  g.r12_hat = unit(*r12_axis, "r12_axis");
  g.r12_nm = *r12_nm;
  g.n_index = *n_index;
  g.lambda0_nm = *lambda0_nm;
  g.gamma1 = gamma1_mhz.value_or(0.0);
  g.gamma2 = gamma2_mhz.value_or(0.0);
  g.validate();
  return g;
}

void Config::validate() const {
  std::string missing;
  for (const char* key : kAlwaysRequired) {
    const auto member = std::get<std::optional<double> Config::*>(find_key(key)->field);
    if (!(this->*member)) missing += std::string(" ") + key;
  }
  if (!v12_mhz && !has_geometry()) missing += " v12_mhz";
  if (!gamma12_mhz && !has_geometry()) missing += " gamma12_mhz";
  if (!missing.empty()) {
    throw ValidationError("missing required keys:" + missing +
                          " (v12_mhz and gamma12_mhz may instead come from r12_nm, n_index, lambda0_nm, "
                          "d1, d2, r12_axis)");
  }
  (void)params();
  (void)sweep();
}

SystemParams Config::params() const {
  SystemParams p;
  p.delta_minus = delta_minus_mhz.value_or(0.0);
  p.delta_plus = 2.0 * delta_plus_half_mhz.value_or(0.0);
  p.delta_eps = delta_eps_mhz.value_or(0.0);
  p.ell1 = ell1_mhz.value_or(0.0);
  p.ell2 = ell2_mhz.value_or(0.0);
  p.gamma1 = gamma1_mhz.value_or(0.0);
  p.gamma2 = gamma2_mhz.value_or(0.0);
  p.v12 = v12_mhz.value_or(0.0);
  p.gamma12 = gamma12_mhz.value_or(0.0);
  if (const auto g = geometry(); g && !v12_mhz) {
    const NearFieldCoupling c = near_field_coupling(*g);
    p.v12 = c.v12_mhz;
    if (!gamma12_mhz) p.gamma12 = c.gamma12_mhz;
  }
  p.validate();
  return p;
}

std::optional<SweepSpec> Config::sweep() const {
  if (!sweep_var && !sweep_start && !sweep_stop && !sweep_points) return std::nullopt;
  if (!sweep_var || !sweep_start || !sweep_stop || !sweep_points) {
    throw ValidationError("sweep needs all of sweep_var, sweep_start, sweep_stop, sweep_points");
  }
  SweepSpec spec;
  spec.variable = parse_sweep_variable(*sweep_var);
  spec.start = *sweep_start;
  spec.stop = *sweep_stop;
  spec.points = *sweep_points;
  spec.base = params();
  spec.validate();
  return spec;
}

Config parse_config_text(std::string_view text, std::string_view source) {
  Config cfg;
  std::stringstream ss{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    const std::string where = std::string(source) + ":" + std::to_string(lineno) + ": ";
    if (eq == std::string::npos) throw ValidationError(where + "expected 'key = value'");
    try {
      cfg.set(trim(std::string_view(body).substr(0, eq)), std::string_view(body).substr(eq + 1));
    } catch (const ValidationError& e) {
      throw ValidationError(where + e.what());
    }
  }
  try {
    cfg.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(source) + ": " + e.what());
  }
  return cfg;
}

Config parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path.string());
}

Config config_from_provenance(const std::vector<std::pair<std::string, std::string>>& provenance) {
  std::string text;
  for (const auto& [k, v] : provenance) {
    if (find_key(k)) text += k + " = " + v + "\n";
  }
  return parse_config_text(text, "<provenance>");
}

}  // namespace dimergate

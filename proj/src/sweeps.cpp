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

#include "dimergate/sweeps.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "dimergate/dynamics.hpp"
#include "dimergate/gates.hpp"
#include "dimergate/table_io.hpp"

namespace dimergate {

namespace {

constexpr const char* kBasisLabels[4] = {"00", "01", "10", "11"};

// Evaluates `row_at` on every grid point, possibly concurrently, and returns
// the rows in grid order.
std::vector<std::vector<double>> evaluate_grid(const std::vector<double>& grid, int threads,
                                               const std::function<std::vector<double>(double)>& row_at) {
  std::vector<std::vector<double>> rows(grid.size());
  const int workers = std::min<int>(resolve_threads(threads), static_cast<int>(grid.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) rows[i] = row_at(grid[i]);
    return rows;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
          try {
            rows[i] = row_at(grid[i]);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = grid.size();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

SweepTable select_columns(SweepTable full, const std::vector<std::string>& selectors) {
  if (selectors.empty()) return full;
  std::vector<std::size_t> keep{0};
  for (const auto& name : selectors) {
    const std::size_t idx = full.index_of(name);
    if (idx != 0 && std::find(keep.begin(), keep.end(), idx) == keep.end()) keep.push_back(idx);
  }
  SweepTable out;
  out.provenance = std::move(full.provenance);
  for (std::size_t idx : keep) out.columns.push_back(full.columns[idx]);
  out.rows.reserve(full.rows.size());
  for (const auto& row : full.rows) {
    std::vector<double> r;
    r.reserve(keep.size());
    for (std::size_t idx : keep) r.push_back(row[idx]);
    out.rows.push_back(std::move(r));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> sweep_provenance(const SweepSpec& spec) {
  std::vector<std::pair<std::string, std::string>> p{{"tool", std::string("dimergate ") + kVersion}};
  for (auto& kv : params_provenance(spec.base)) p.push_back(std::move(kv));
  p.emplace_back("sweep_var", std::string(to_string(spec.variable)));
  p.emplace_back("sweep_start", format_double(spec.start));
  p.emplace_back("sweep_stop", format_double(spec.stop));
  p.emplace_back("sweep_points", std::to_string(spec.points));
  return p;
}

}  // namespace

std::string_view to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::delta_minus: return "delta_minus";
    case SweepVariable::delta_plus_half: return "delta_plus_half";
    case SweepVariable::delta_eps: return "delta_eps";
    case SweepVariable::ell: return "ell";
  }
  return "?";
}

SweepVariable parse_sweep_variable(std::string_view name) {
  for (auto v : {SweepVariable::delta_minus, SweepVariable::delta_plus_half, SweepVariable::delta_eps,
                 SweepVariable::ell}) {
    if (name == to_string(v)) return v;
  }
  throw ValidationError("unknown sweep variable '" + std::string(name) +
                        "' (expected delta_minus, delta_plus_half, delta_eps or ell)");
}

SystemParams apply_sweep_value(SystemParams base, SweepVariable var, double value) {
  switch (var) {
    case SweepVariable::delta_minus: base.delta_minus = value; break;
    case SweepVariable::delta_plus_half: base.delta_plus = 2.0 * value; break;
    case SweepVariable::delta_eps: base.delta_eps = value; break;
    case SweepVariable::ell: base.ell1 = base.ell2 = value; break;
  }
  return base;
}

void SweepSpec::validate() const {
  if (!std::isfinite(start) || !std::isfinite(stop)) throw ValidationError("sweep bounds must be finite");
  if (!(start < stop)) throw ValidationError("sweep requires start < stop");
  if (points < 2) throw ValidationError("sweep requires at least 2 points");
  base.validate();
}

std::vector<double> SweepSpec::grid() const {
  std::vector<double> g(points);
  const double step = (stop - start) / (points - 1);
  for (int i = 0; i < points; ++i) g[i] = start + i * step;
  g.back() = stop;
  return g;
}

std::size_t SweepTable::index_of(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw ValidationError("no column named '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> SweepTable::column(std::string_view name) const {
  const std::size_t idx = index_of(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[idx]);
  return out;
}

SweepTable eigen_sweep(const SweepSpec& spec, int threads) {
  spec.validate();
  SweepTable table;
  table.columns.push_back(std::string(to_string(spec.variable)) + "_mhz");
  for (int k = 1; k <= 4; ++k) table.columns.push_back("E" + std::to_string(k) + "_mhz");
  for (int k = 1; k <= 4; ++k) {
    for (const char* label : kBasisLabels) table.columns.push_back("a" + std::string(label) + "_" + std::to_string(k));
  }
  table.provenance = sweep_provenance(spec);
  table.rows = evaluate_grid(spec.grid(), threads, [&](double x) {
    const EigenSystem es = eigensystem(build_hamiltonian(apply_sweep_value(spec.base, spec.variable, x)));
    std::vector<double> row{x};
    row.insert(row.end(), es.energies_mhz.begin(), es.energies_mhz.end());
    for (int k = 0; k < 4; ++k) {
      for (int b = 0; b < 4; ++b) row.push_back(es.vectors(b, k).real());
    }
    return row;
  });
  return select_columns(std::move(table), spec.observables);
}

SweepTable spectrum_sweep(const SweepSpec& spec, int threads) {
  spec.validate();
  const bool coherences =
      std::find(spec.observables.begin(), spec.observables.end(), "coherences") != spec.observables.end();
  SweepTable table;
  table.columns.push_back(std::string(to_string(spec.variable)) + "_mhz");
  for (const char* label : kBasisLabels) table.columns.push_back("p" + std::string(label));
  if (coherences) {
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        table.columns.push_back("c" + std::string(kBasisLabels[i]) + "_" + kBasisLabels[j]);
      }
    }
  }
  table.provenance = sweep_provenance(spec);
  table.rows = evaluate_grid(spec.grid(), threads, [&](double x) {
    const SystemParams p = apply_sweep_value(spec.base, spec.variable, x);
    if (p.gamma1 == 0.0 && p.gamma2 == 0.0) {
      throw ValidationError("spectrum_sweep: needs dissipation (gamma1 or gamma2 > 0)");
    }
    const DensityMatrix rho = steady_state(build_liouvillian(p, build_hamiltonian(p)));
    std::vector<double> row{x};
    for (int b = 0; b < 4; ++b) row.push_back(rho(b, b).real());
    if (coherences) {
      for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) row.push_back(std::abs(rho(i, j)));
      }
    }
    return row;
  });
  std::vector<std::string> selectors;
  for (const auto& s : spec.observables) {
    if (s != "coherences") selectors.push_back(s);
  }
  if (coherences && !selectors.empty()) {
    for (std::size_t c = 5; c < table.columns.size(); ++c) selectors.push_back(table.columns[c]);
  }
  return select_columns(std::move(table), selectors);
}

SweepTable gate_sweep(const SweepSpec& spec, GateKind kind, int threads) {
  spec.validate();
  SweepTable table;
  table.columns = {std::string(to_string(spec.variable)) + "_mhz", "p00", "p01", "p10", "p11", "fidelity"};
  table.provenance = sweep_provenance(spec);
  table.rows = evaluate_grid(spec.grid(), threads, [&](double x) {
    const SystemParams p = apply_sweep_value(spec.base, spec.variable, x);
    GateResult r = kind == GateKind::cnot
                       ? run_schedule(DensityMatrix::basis(Basis::eg), cnot_schedule(p, 1, p.ell2), p,
                                      basis_state(Basis::ee), "cnot")
                       : run_schedule(DensityMatrix::basis(Basis::gg), bell_schedule(p, p.ell1), p, bell_target(),
                                      "bell");
    std::vector<double> row{x};
    for (int b = 0; b < 4; ++b) row.push_back(r.final_state(b, b).real());
    row.push_back(r.fidelity);
    return row;
  });
  return select_columns(std::move(table), spec.observables);
}

Peak peak_finder(const SweepTable& table, std::string_view column,
                 std::optional<std::pair<double, double>> window) {
  const std::size_t col = table.index_of(column);
  std::vector<double> xs, ys;
  for (const auto& r : table.rows) {
    if (window && (r[0] < window->first || r[0] > window->second)) continue;
    xs.push_back(r[0]);
    ys.push_back(r[col]);
  }
  if (xs.size() < 5) throw ValidationError("peak_finder: needs at least 5 rows");

  const auto imax = static_cast<std::size_t>(std::max_element(ys.begin(), ys.end()) - ys.begin());
  const auto [lo_it, hi_it] = std::minmax_element(ys.begin(), ys.end());
  if (*hi_it - *lo_it <= 1e-12 * std::max(1.0, std::abs(*hi_it))) {
    throw NumericalError("peak_finder: column is flat, no peak");
  }
  if (imax == 0 || imax + 1 == xs.size()) throw NumericalError("peak_finder: maximum touches the grid edge");

  Peak peak;
  const double y0 = ys[imax - 1], y1 = ys[imax], y2 = ys[imax + 1];
  const double h = 0.5 * (xs[imax + 1] - xs[imax - 1]);
  const double curvature = y0 - 2.0 * y1 + y2;
  double shift = 0.0;
  if (curvature < 0.0) shift = std::clamp(0.5 * (y0 - y2) / curvature, -1.0, 1.0);
  peak.location = xs[imax] + shift * h;
  peak.height = y1 - 0.25 * (y0 - y2) * shift;

  const double half = 0.5 * peak.height;
  const auto crossing = [&](std::size_t a, std::size_t b) {
    return xs[a] + (half - ys[a]) * (xs[b] - xs[a]) / (ys[b] - ys[a]);
  };
  std::optional<double> left, right;
  for (std::size_t i = imax; i > 0; --i) {
    if (ys[i - 1] <= half) {
      left = crossing(i - 1, i);
      break;
    }
  }
  for (std::size_t i = imax; i + 1 < ys.size(); ++i) {
    if (ys[i + 1] <= half) {
      right = crossing(i, i + 1);
      break;
    }
  }
  peak.fwhm = (left && right) ? *right - *left : std::numeric_limits<double>::quiet_NaN();
  return peak;
}

std::vector<std::pair<std::string, std::string>> params_provenance(const SystemParams& p) {
  return {{"delta_minus_mhz", format_double(p.delta_minus)},
          {"delta_plus_half_mhz", format_double(0.5 * p.delta_plus)},
          {"v12_mhz", format_double(p.v12)},
          {"delta_eps_mhz", format_double(p.delta_eps)},
          {"ell1_mhz", format_double(p.ell1)},
          {"ell2_mhz", format_double(p.ell2)},
          {"gamma1_mhz", format_double(p.gamma1)},
          {"gamma2_mhz", format_double(p.gamma2)},
          {"gamma12_mhz", format_double(p.gamma12)}};
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace dimergate

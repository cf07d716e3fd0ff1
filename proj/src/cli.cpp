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

#include "dimergate/cli.hpp"

#include <cstdlib>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "dimergate/config.hpp"
#include "dimergate/dynamics.hpp"
#include "dimergate/gates.hpp"
#include "dimergate/sweeps.hpp"
#include "dimergate/table_io.hpp"

namespace dimergate {

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  bool quiet = false;
  std::optional<int> threads;
  std::vector<std::string> sets;
  std::optional<double> delta_eps;
  std::optional<double> ell;
};

struct SweepOverrides {
  std::optional<std::string> var;
  std::optional<double> start;
  std::optional<double> stop;
  std::optional<int> points;
};

struct OuterSweep {
  std::optional<std::string> var;
  double start = 0.0;
  double stop = 0.0;
  int points = 0;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "config file (key = value per line)")->required()->check(
      CLI::ExistingFile);
  cmd->add_option("--out", o.out_path, "output path (default: standard output)");
  cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--quiet", o.quiet, "suppress progress messages");
  cmd->add_option("--threads", o.threads, "worker threads for sweeps (0 = auto)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--set", o.sets, "override a config key, e.g. --set v12_mhz=50");
  cmd->add_option("--delta-eps", o.delta_eps, "override delta_eps_mhz");
  cmd->add_option("--ell", o.ell, "override ell1_mhz and ell2_mhz");
}

void add_sweep_overrides(CLI::App* cmd, SweepOverrides& s) {
  cmd->add_option("--var", s.var, "sweep variable")
      ->check(CLI::IsMember({"delta_minus", "delta_plus_half", "delta_eps", "ell"}));
  cmd->add_option("--start", s.start, "sweep start (MHz)");
  cmd->add_option("--stop", s.stop, "sweep stop (MHz)");
  cmd->add_option("--points", s.points, "sweep points");
}

Config load_config(const CommonOptions& o) {
  Config cfg = parse_config(o.config_path);
  if (o.delta_eps) cfg.delta_eps_mhz = *o.delta_eps;
  if (o.ell) cfg.ell1_mhz = cfg.ell2_mhz = *o.ell;
  for (const auto& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ValidationError("--set expects key=value, got '" + kv + "'");
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  cfg.validate();
  return cfg;
}

int thread_count(const CommonOptions& o) {
  if (o.threads) return *o.threads;
  if (const char* env = std::getenv("DIMERGATE_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 0) return n;
    } catch (const std::exception&) {
    }
    throw ValidationError("DIMERGATE_THREADS must be a non-negative integer");
  }
  return 0;
}

SweepSpec resolve_sweep(Config& cfg, const SweepOverrides& s, const char* default_var) {
  if (s.var) cfg.sweep_var = *s.var;
  if (s.start) cfg.sweep_start = *s.start;
  if (s.stop) cfg.sweep_stop = *s.stop;
  if (s.points) cfg.sweep_points = *s.points;
  if (!cfg.sweep_var && (cfg.sweep_start || cfg.sweep_stop || cfg.sweep_points)) cfg.sweep_var = default_var;
  const auto spec = cfg.sweep();
  if (!spec) {
    throw ValidationError("no sweep given: set sweep_var/sweep_start/sweep_stop/sweep_points or --start/--stop/--points");
  }
  return *spec;
}

std::vector<std::pair<std::string, std::string>> provenance_for(const std::string& command, const Config& cfg) {
  std::vector<std::pair<std::string, std::string>> p{{"tool", std::string("dimergate ") + kVersion},
                                                     {"command", command}};
  for (auto& kv : cfg.entries()) p.push_back(std::move(kv));
  return p;
}

void emit(const CommonOptions& o, const SweepTable& table, std::ostream& out, std::ostream& err) {
  const std::string body = o.format == "json" ? to_json(table) : to_csv(table);
  if (o.out_path.empty()) {
    out << body;
  } else {
    write_file_atomic(o.out_path, body);
  }
  if (!o.quiet) {
    err << "dimergate: " << table.rows.size() << " rows -> " << (o.out_path.empty() ? "stdout" : o.out_path)
        << "\n";
  }
}

SweepTable trajectory_table(const Trajectory& traj, const Vector4c* target) {
  SweepTable t;
  t.columns = {"t_ns", "p00", "p01", "p10", "p11"};
  if (target) t.columns.push_back("fidelity");
  for (const auto& s : traj) {
    std::vector<double> row{s.t_ns};
    for (int b = 0; b < 4; ++b) row.push_back(s.rho(b, b).real());
    if (target) row.push_back(state_fidelity(s.rho, *target));
    t.rows.push_back(std::move(row));
  }
  return t;
}

void add_schedule_provenance(SweepTable& t, const PulseSchedule& schedule) {
  int k = 0;
  for (const auto& s : schedule.segments()) {
    const std::string p = "segment" + std::to_string(++k) + ".";
    t.provenance.emplace_back(p + "duration_ns", format_double(s.duration_ns));
    t.provenance.emplace_back(p + "freq_offset_mhz", format_double(s.freq_offset_mhz));
    t.provenance.emplace_back(p + "amp1_mhz", format_double(s.amp1_mhz));
    t.provenance.emplace_back(p + "amp2_mhz", format_double(s.amp2_mhz));
    t.provenance.emplace_back(p + "phase", format_double(s.phase));
  }
}

Basis parse_basis(const std::string& s) {
  if (s == "00") return Basis::gg;
  if (s == "01") return Basis::ge;
  if (s == "10") return Basis::eg;
  if (s == "11") return Basis::ee;
  throw ValidationError("basis label must be 00, 01, 10 or 11");
}

DensityMatrix initial_state(const std::string& label) {
  if (label == "bell") return DensityMatrix::pure(bell_target());
  if (label == "mixed") return DensityMatrix::maximally_mixed();
  return DensityMatrix::basis(parse_basis(label));
}

// Prefixes an outer sweep column when --outer-var is given.
SweepTable with_outer(const OuterSweep& outer, const SweepSpec& inner,
                      const std::function<SweepTable(const SweepSpec&)>& run) {
  if (!outer.var) return run(inner);
  SweepSpec o;
  o.variable = parse_sweep_variable(*outer.var);
  o.start = outer.start;
  o.stop = outer.stop;
  o.points = outer.points;
  o.base = inner.base;
  o.validate();
  SweepTable all;
  for (double x : o.grid()) {
    SweepSpec s = inner;
    s.base = apply_sweep_value(inner.base, o.variable, x);
    SweepTable part = run(s);
    if (all.columns.empty()) {
      all.columns = {std::string(to_string(o.variable)) + "_mhz"};
      all.columns.insert(all.columns.end(), part.columns.begin(), part.columns.end());
    }
    for (auto& row : part.rows) {
      row.insert(row.begin(), x);
      all.rows.push_back(std::move(row));
    }
  }
  return all;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"dimergate: driven dipole-coupled molecular dimer simulator", "dimergate"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  CommonOptions common;
  SweepOverrides sweep_over;
  OuterSweep outer;
  bool coherences = false;
  std::string initial = "00";
  double duration = 0.0;
  std::optional<double> stride;
  double offset = 0.0;
  double phase = 0.0;
  std::string gate_kind;
  int control = 1;
  std::optional<std::string> input;
  std::optional<double> amp;
  std::string addressing = "both";
  std::string sweep_kind = "spectrum";
  std::optional<double> xy_v12;
  std::optional<double> xy_time;

  auto* eigen = app.add_subcommand("eigen", "eigenenergies and coefficients over a sweep");
  add_common(eigen, common);
  add_sweep_overrides(eigen, sweep_over);

  auto* spectrum = app.add_subcommand("spectrum", "steady-state populations over a sweep");
  add_common(spectrum, common);
  add_sweep_overrides(spectrum, sweep_over);
  spectrum->add_flag("--coherences", coherences, "also report |rho_ij| for i < j");

  auto* evolve_cmd = app.add_subcommand("evolve", "time evolution under the configured drive");
  add_common(evolve_cmd, common);
  evolve_cmd->add_option("--initial", initial, "00, 01, 10, 11, bell or mixed");
  evolve_cmd->add_option("--duration", duration, "duration (ns)")->required();
  evolve_cmd->add_option("--stride", stride, "output stride (ns)");
  evolve_cmd->add_option("--offset", offset, "drive offset from the reference laser (MHz)");
  evolve_cmd->add_option("--phase", phase, "drive phase (rad)");

  auto* gate = app.add_subcommand("gate", "conditional pi pulse (CNOT)");
  add_common(gate, common);
  gate->add_option("kind", gate_kind, "gate kind")->required()->check(CLI::IsMember({"cnot"}));
  gate->add_option("--control", control, "control qubit")->check(CLI::IsMember({1, 2}));
  gate->add_option("--input", input, "input basis state (default: control excited)");
  gate->add_option("--amp", amp, "drive amplitude (MHz, default: target ell)");
  gate->add_option("--address", addressing, "drive both molecules or the target only")
      ->check(CLI::IsMember({"both", "target"}));
  gate->add_option("--stride", stride, "output stride (ns)");

  auto* bell = app.add_subcommand("bell", "Bell-state preparation from |00>");
  add_common(bell, common);
  bell->add_option("--amp", amp, "drive amplitude (MHz, default: ell1)");
  bell->add_option("--stride", stride, "output stride (ns)");

  auto* xy = app.add_subcommand("xy", "closed-form exchange gate exp(-i t V (XX + YY))");
  add_common(xy, common);
  xy->add_option("--v12", xy_v12, "coupling (MHz, default: config v12)");
  xy->add_option("--time", xy_time, "evolution time (ns, default: pi / 4V)");

  auto* sweep = app.add_subcommand("sweep", "generic sweep with an optional outer sweep");
  add_common(sweep, common);
  add_sweep_overrides(sweep, sweep_over);
  sweep->add_option("--kind", sweep_kind, "observable set")
      ->check(CLI::IsMember({"eigen", "spectrum", "cnot", "bell"}));
  sweep->add_option("--outer-var", outer.var, "outer sweep variable")
      ->check(CLI::IsMember({"delta_minus", "delta_plus_half", "delta_eps", "ell"}));
  sweep->add_option("--outer-start", outer.start, "outer sweep start (MHz)");
  sweep->add_option("--outer-stop", outer.stop, "outer sweep stop (MHz)");
  sweep->add_option("--outer-points", outer.points, "outer sweep points");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    Config cfg = load_config(common);
    if (const auto geom = cfg.geometry(); geom && !common.quiet) {
      const NearFieldCoupling nf = near_field_coupling(*geom);
      if (nf.outside_near_field) {
        err << "dimergate: warning: k0 r12 = " << nf.k0_r12 << " > " << kNearFieldWarnThreshold
            << ", near-field coupling formula is outside its range\n";
      }
    }
    const int threads = thread_count(common);
    const SystemParams params = cfg.params();
    SweepTable table;
    std::string command;

    if (eigen->parsed()) {
      command = "eigen";
      const SweepSpec spec = resolve_sweep(cfg, sweep_over, "delta_minus");
      table = eigen_sweep(spec, threads);
      table.provenance = provenance_for(command, cfg);
    } else if (spectrum->parsed()) {
      command = "spectrum";
      SweepSpec spec = resolve_sweep(cfg, sweep_over, "delta_plus_half");
      if (coherences) spec.observables = {"coherences"};
      table = spectrum_sweep(spec, threads);
      table.provenance = provenance_for(command, cfg);
    } else if (sweep->parsed()) {
      command = "sweep " + sweep_kind;
      const SweepSpec spec = resolve_sweep(cfg, sweep_over, "delta_plus_half");
      table = with_outer(outer, spec, [&](const SweepSpec& s) {
        if (sweep_kind == "eigen") return eigen_sweep(s, threads);
        if (sweep_kind == "cnot") return gate_sweep(s, GateKind::cnot, threads);
        if (sweep_kind == "bell") return gate_sweep(s, GateKind::bell, threads);
        return spectrum_sweep(s, threads);
      });
      table.provenance = provenance_for(command, cfg);
    } else if (evolve_cmd->parsed()) {
      command = "evolve";
      PulseSegment seg{duration, offset, params.ell1, params.ell2, phase};
      const Trajectory traj = evolve(initial_state(initial), seg, params, stride.value_or(duration / 200.0));
      table = trajectory_table(traj, nullptr);
      table.provenance = provenance_for(command, cfg);
      table.provenance.emplace_back("initial", initial);
    } else if (gate->parsed()) {
      command = "gate cnot";
      const double a = amp.value_or(control == 1 ? params.ell2 : params.ell1);
      const PulseSchedule schedule = cnot_schedule(
          params, control, a, addressing == "both" ? DriveAddressing::both : DriveAddressing::target_only);
      const Basis in = input ? parse_basis(*input) : (control == 1 ? Basis::eg : Basis::ge);
      const Vector4c target = basis_state(cnot_output(in, control));
      const GateResult r = run_schedule(DensityMatrix::basis(in), schedule, params, target, "cnot",
                                        stride.value_or(0.01));
      table = trajectory_table(r.trajectory, &target);
      table.provenance = provenance_for(command, cfg);
      table.provenance.emplace_back("control", std::to_string(control));
      table.provenance.emplace_back("input", std::to_string(static_cast<int>(in) >> 1) +
                                                 std::to_string(static_cast<int>(in) & 1));
      add_schedule_provenance(table, schedule);
    } else if (bell->parsed()) {
      command = "bell";
      const PulseSchedule schedule = bell_schedule(params, amp.value_or(params.ell1));
      const Vector4c target = bell_target();
      const GateResult r = run_schedule(DensityMatrix::basis(Basis::gg), schedule, params, target, "bell",
                                        stride.value_or(0.01));
      table = trajectory_table(r.trajectory, &target);
      table.provenance = provenance_for(command, cfg);
      add_schedule_provenance(table, schedule);
    } else if (xy->parsed()) {
      command = "xy";
      const double v = xy_v12.value_or(params.v12);
      const double t = xy_time ? *xy_time : (v == 0.0 ? 0.0 : xy_gate_time(v));
      const XyGate g = ideal_xy_gate(v, t);
      if (g.identity_fallback && !common.quiet) err << "dimergate: warning: v12 = 0, gate is the identity\n";
      table.columns = {"row", "col", "re", "im"};
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
          table.rows.push_back({double(i), double(j), g.unitary(i, j).real(), g.unitary(i, j).imag()});
        }
      }
      table.provenance = provenance_for(command, cfg);
      table.provenance.emplace_back("xy_v12_mhz", format_double(v));
      table.provenance.emplace_back("t_ns", format_double(t));
    }

    emit(common, table, out, err);
    return kExitOk;
  } catch (const NumericalError& e) {
    err << "dimergate: numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "dimergate: error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace dimergate

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

#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dimergate/cli.hpp"
#include "dimergate/config.hpp"
#include "dimergate/dynamics.hpp"
#include "dimergate/gates.hpp"
#include "dimergate/model.hpp"
#include "dimergate/sweeps.hpp"

namespace py = pybind11;
using namespace dimergate;

namespace {

py::dict table_dict(const SweepTable& t) {
  py::array_t<double> rows({t.rows.size(), t.columns.size()});
  auto r = rows.mutable_unchecked<2>();
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    for (std::size_t j = 0; j < t.columns.size(); ++j) r(i, j) = t.rows[i][j];
  py::dict prov;
  for (const auto& [k, v] : t.provenance) prov[py::str(k)] = v;
  py::dict d;
  d["columns"] = t.columns;
  d["rows"] = rows;
  d["provenance"] = prov;
  return d;
}

SweepSpec make_spec(const SystemParams& p, const std::string& var, double start, double stop, int points,
                    std::vector<std::string> observables) {
  SweepSpec s;
  s.variable = parse_sweep_variable(var);
  s.start = start;
  s.stop = stop;
  s.points = points;
  s.base = p;
  s.observables = std::move(observables);
  return s;
}

py::dict trajectory_dict(const Trajectory& traj) {
  const auto n = static_cast<py::ssize_t>(traj.size());
  py::array_t<double> times(n);
  py::array_t<std::complex<double>> states({n, py::ssize_t{4}, py::ssize_t{4}});
  auto t = times.mutable_unchecked<1>();
  auto s = states.mutable_unchecked<3>();
  for (py::ssize_t k = 0; k < n; ++k) {
    t(k) = traj[k].t_ns;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) s(k, i, j) = traj[k].rho(i, j);
  }
  py::dict d;
  d["t_ns"] = times;
  d["rho"] = states;
  return d;
}

py::dict gate_dict(const GateResult& r, const PulseSchedule& s) {
  py::dict d = trajectory_dict(r.trajectory);
  d["fidelity"] = r.fidelity;
  d["final_state"] = r.final_state.matrix();
  py::list segs;
  for (const auto& seg : s.segments()) {
    segs.append(py::dict(py::arg("duration_ns") = seg.duration_ns, py::arg("freq_offset_mhz") = seg.freq_offset_mhz,
                         py::arg("amp1_mhz") = seg.amp1_mhz, py::arg("amp2_mhz") = seg.amp2_mhz,
                         py::arg("phase") = seg.phase));
  }
  d["segments"] = segs;
  return d;
}

Basis basis_from(const std::string& s) {
  if (s == "00") return Basis::gg;
  if (s == "01") return Basis::ge;
  if (s == "10") return Basis::eg;
  if (s == "11") return Basis::ee;
  throw ValidationError("basis label must be 00, 01, 10 or 11");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Driven dipole-coupled molecular dimer: spectra, open-system dynamics and gates";
  m.attr("__version__") = kVersion;

  auto validation = py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  auto numerical = py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);
  py::register_exception<IntegrationError>(m, "IntegrationError", numerical.ptr());
  (void)validation;

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init([](double dm, double dp, double v12, double de, double ell1, double ell2, double g1, double g2,
                       double g12) {
             SystemParams p{dm, dp, v12, de, ell1, ell2, g1, g2, g12};
             p.validate();
             return p;
           }),
           py::kw_only(), py::arg("delta_minus") = 0.0, py::arg("delta_plus") = 0.0, py::arg("v12") = 0.0,
           py::arg("delta_eps") = 0.0, py::arg("ell1") = 0.0, py::arg("ell2") = 0.0, py::arg("gamma1") = 0.0,
           py::arg("gamma2") = 0.0, py::arg("gamma12") = 0.0)
      .def_readwrite("delta_minus", &SystemParams::delta_minus)
      .def_readwrite("delta_plus", &SystemParams::delta_plus)
      .def_readwrite("v12", &SystemParams::v12)
      .def_readwrite("delta_eps", &SystemParams::delta_eps)
      .def_readwrite("ell1", &SystemParams::ell1)
      .def_readwrite("ell2", &SystemParams::ell2)
      .def_readwrite("gamma1", &SystemParams::gamma1)
      .def_readwrite("gamma2", &SystemParams::gamma2)
      .def_readwrite("gamma12", &SystemParams::gamma12)
      .def_property_readonly("delta1", &SystemParams::delta1)
      .def_property_readonly("delta2", &SystemParams::delta2)
      .def("validate", &SystemParams::validate)
      .def("__eq__", [](const SystemParams& a, const SystemParams& b) { return a == b; })
      .def("__repr__", [](const SystemParams& p) {
        std::ostringstream os;
        os << "SystemParams(delta_minus=" << p.delta_minus << ", delta_plus=" << p.delta_plus << ", v12=" << p.v12
           << ", delta_eps=" << p.delta_eps << ", ell1=" << p.ell1 << ", ell2=" << p.ell2
           << ", gamma1=" << p.gamma1 << ", gamma2=" << p.gamma2 << ", gamma12=" << p.gamma12 << ")";
        return os.str();
      });

  py::class_<DressedCoefficients>(m, "DressedCoefficients")
      .def_readonly("alpha1", &DressedCoefficients::alpha1)
      .def_readonly("alpha2", &DressedCoefficients::alpha2)
      .def_readonly("splitting_mhz", &DressedCoefficients::splitting_mhz)
      .def_readonly("degenerate_limit", &DressedCoefficients::degenerate_limit);

  py::class_<ConditionalFrequencies>(m, "ConditionalFrequencies")
      .def_readonly("delta_shift", &ConditionalFrequencies::delta_shift)
      .def_readonly("omega12_offset", &ConditionalFrequencies::omega12_offset)
      .def_readonly("omega21_offset", &ConditionalFrequencies::omega21_offset);

  py::class_<NearFieldCoupling>(m, "NearFieldCoupling")
      .def_readonly("v12_mhz", &NearFieldCoupling::v12_mhz)
      .def_readonly("gamma12_mhz", &NearFieldCoupling::gamma12_mhz)
      .def_readonly("z", &NearFieldCoupling::z)
      .def_readonly("k0_r12", &NearFieldCoupling::k0_r12)
      .def_readonly("outside_near_field", &NearFieldCoupling::outside_near_field);

  m.def(
      "hamiltonian",
      [](const SystemParams& p, double offset, double phase) { return build_hamiltonian(p, offset, phase).matrix(); },
      py::arg("params"), py::arg("drive_offset_mhz") = 0.0, py::arg("drive_phase") = 0.0,
      "Rotating-frame Hamiltonian in rad/ns, basis |00>, |01>, |10>, |11>.");

  m.def(
      "eigensystem",
      [](const SystemParams& p) {
        const EigenSystem es = eigensystem(build_hamiltonian(p));
        return std::make_tuple(Eigen::Vector4d(es.energies_mhz.data()), Matrix4c(es.vectors));
      },
      py::arg("params"), "Ascending energies (MHz) and eigenvectors as columns.");

  m.def("dressed_coefficients", &dressed_coefficients, py::arg("delta_minus"), py::arg("v12"));
  m.def("conditional_frequencies", &conditional_frequencies, py::arg("params"));

  m.def(
      "near_field_coupling",
      [](const Eigen::Vector3d& d1, const Eigen::Vector3d& d2, const Eigen::Vector3d& r12_axis, double r12_nm,
         double n_index, double lambda0_nm, double gamma1, double gamma2) {
        DipoleGeometry g;
        g.d1_hat = d1.normalized();
        g.d2_hat = d2.normalized();
        g.r12_hat = r12_axis.normalized();
        g.r12_nm = r12_nm;
        g.n_index = n_index;
        g.lambda0_nm = lambda0_nm;
        g.gamma1 = gamma1;
        g.gamma2 = gamma2;
        return near_field_coupling(g);
      },
      py::arg("d1"), py::arg("d2"), py::arg("r12_axis"), py::arg("r12_nm"), py::arg("n_index"),
      py::arg("lambda0_nm"), py::arg("gamma1"), py::arg("gamma2"));

  m.def(
      "liouvillian",
      [](const SystemParams& p) { return Matrix16c(build_liouvillian(p, build_hamiltonian(p)).matrix()); },
      py::arg("params"), "Column-stacking superoperator in 1/ns.");

  m.def(
      "steady_state",
      [](const SystemParams& p) { return steady_state(build_liouvillian(p, build_hamiltonian(p))).matrix(); },
      py::arg("params"));

  m.def(
      "evolve",
      [](const Matrix4c& rho0, const SystemParams& p, double duration, double stride, double offset, double phase) {
        const PulseSegment seg{duration, offset, p.ell1, p.ell2, phase};
        Trajectory traj;
        {
          py::gil_scoped_release release;
          traj = evolve(DensityMatrix(rho0), seg, p, stride);
        }
        return trajectory_dict(traj);
      },
      py::arg("rho0"), py::arg("params"), py::arg("duration_ns"), py::arg("stride_ns"),
      py::arg("drive_offset_mhz") = 0.0, py::arg("drive_phase") = 0.0);

  m.def(
      "cnot",
      [](const SystemParams& p, int control, std::optional<std::string> input, std::optional<double> amp,
         const std::string& address, double stride) {
        if (address != "both" && address != "target") throw ValidationError("address must be 'both' or 'target'");
        const double a = amp.value_or(control == 1 ? p.ell2 : p.ell1);
        const PulseSchedule s = cnot_schedule(
            p, control, a, address == "both" ? DriveAddressing::both : DriveAddressing::target_only);
        const Basis in = input ? basis_from(*input) : (control == 1 ? Basis::eg : Basis::ge);
        const GateResult r =
            run_schedule(DensityMatrix::basis(in), s, p, basis_state(cnot_output(in, control)), "cnot", stride);
        return gate_dict(r, s);
      },
      py::arg("params"), py::arg("control") = 1, py::arg("input") = py::none(), py::arg("amp") = py::none(),
      py::arg("address") = "both", py::arg("stride_ns") = 0.01);

  m.def(
      "bell",
      [](const SystemParams& p, std::optional<double> amp, double stride) {
        const PulseSchedule s = bell_schedule(p, amp.value_or(p.ell1));
        return gate_dict(run_schedule(DensityMatrix::basis(Basis::gg), s, p, bell_target(), "bell", stride), s);
      },
      py::arg("params"), py::arg("amp") = py::none(), py::arg("stride_ns") = 0.01);

  m.def("xy_gate_time", &xy_gate_time, py::arg("v12"));
  m.def(
      "ideal_xy_gate",
      [](double v12, std::optional<double> t) {
        return ideal_xy_gate(v12, t ? *t : (v12 == 0.0 ? 0.0 : xy_gate_time(v12))).unitary;
      },
      py::arg("v12"), py::arg("t_ns") = py::none());

  m.def(
      "eigen_sweep",
      [](const SystemParams& p, const std::string& var, double start, double stop, int points,
         std::vector<std::string> observables, int threads) {
        const SweepSpec s = make_spec(p, var, start, stop, points, std::move(observables));
        SweepTable t;
        {
          py::gil_scoped_release release;
          t = eigen_sweep(s, threads);
        }
        return table_dict(t);
      },
      py::arg("params"), py::arg("var"), py::arg("start"), py::arg("stop"), py::arg("points"),
      py::arg("observables") = std::vector<std::string>{}, py::arg("threads") = 1);

  m.def(
      "spectrum_sweep",
      [](const SystemParams& p, const std::string& var, double start, double stop, int points,
         std::vector<std::string> observables, int threads) {
        const SweepSpec s = make_spec(p, var, start, stop, points, std::move(observables));
        SweepTable t;
        {
          py::gil_scoped_release release;
          t = spectrum_sweep(s, threads);
        }
        return table_dict(t);
      },
      py::arg("params"), py::arg("var"), py::arg("start"), py::arg("stop"), py::arg("points"),
      py::arg("observables") = std::vector<std::string>{}, py::arg("threads") = 1);

  m.def(
      "gate_sweep",
      [](const SystemParams& p, const std::string& kind, const std::string& var, double start, double stop,
         int points, int threads) {
        if (kind != "cnot" && kind != "bell") throw ValidationError("gate kind must be 'cnot' or 'bell'");
        const SweepSpec s = make_spec(p, var, start, stop, points, {});
        SweepTable t;
        {
          py::gil_scoped_release release;
          t = gate_sweep(s, kind == "cnot" ? GateKind::cnot : GateKind::bell, threads);
        }
        return table_dict(t);
      },
      py::arg("params"), py::arg("kind"), py::arg("var"), py::arg("start"), py::arg("stop"), py::arg("points"),
      py::arg("threads") = 1);

  m.def(
      "peak_finder",
      [](const std::vector<double>& x, const std::vector<double>& y, std::optional<std::pair<double, double>> window) {
        if (x.size() != y.size()) throw ValidationError("x and y must have the same length");
        SweepTable t;
        t.columns = {"x", "y"};
        for (std::size_t i = 0; i < x.size(); ++i) t.rows.push_back({x[i], y[i]});
        const Peak pk = peak_finder(t, "y", window);
        return std::make_tuple(pk.location, pk.height, pk.fwhm);
      },
      py::arg("x"), py::arg("y"), py::arg("window") = py::none(), "Returns (location, height, fwhm).");

  m.def(
      "load_config", [](const std::string& path) { return parse_config(path).params(); }, py::arg("path"),
      "Validated SystemParams from a key = value config file.");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = run_command(args, out, err);
        }
        return std::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line tool in-process; returns (exit_code, stdout, stderr).");
}

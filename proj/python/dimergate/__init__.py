# Copyright 2026 The dimergate Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Driven dipole-coupled molecular dimer simulator.

Frequencies are cyclic MHz, times are ns. Basis order is |00>, |01>, |10>, |11>
with the first digit for molecule 1 and 1 meaning excited.
"""

from ._core import (
    ConditionalFrequencies,
    DressedCoefficients,
    IntegrationError,
    NearFieldCoupling,
    NumericalError,
    SystemParams,
    ValidationError,
    __version__,
    bell,
    cnot,
    conditional_frequencies,
    dressed_coefficients,
    eigen_sweep,
    eigensystem,
    evolve,
    gate_sweep,
    hamiltonian,
    ideal_xy_gate,
    liouvillian,
    load_config,
    near_field_coupling,
    peak_finder,
    run_cli,
    spectrum_sweep,
    steady_state,
    xy_gate_time,
)

__all__ = [
    "ConditionalFrequencies",
    "DressedCoefficients",
    "IntegrationError",
    "NearFieldCoupling",
    "NumericalError",
    "SystemParams",
    "ValidationError",
    "__version__",
    "bell",
    "cnot",
    "conditional_frequencies",
    "dressed_coefficients",
    "eigen_sweep",
    "eigensystem",
    "evolve",
    "gate_sweep",
    "hamiltonian",
    "ideal_xy_gate",
    "liouvillian",
    "load_config",
    "near_field_coupling",
    "peak_finder",
    "run_cli",
    "spectrum_sweep",
    "steady_state",
    "xy_gate_time",
]

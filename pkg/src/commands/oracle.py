# Copyright 2025 Voltstriker

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
The ``oracle`` subcommand: convergence of the discrete-bath oracle.

For every mode count of ``dynamics.n_modes_sweep`` the oracle history is
written to ``oracle_<n>.csv`` and compared with a reference: the pseudomode
solution for Lorentzian reservoirs, the spectral representation otherwise.
"""

from __future__ import annotations

import argparse
from typing import TYPE_CHECKING

from commands.decay import default_t_max, max_abs_deviation  # pylint: disable=import-error,no-name-in-module
from models.run_config import RunConfig  # pylint: disable=import-error,no-name-in-module
from models.spectral_density import SpectralDensityKind  # pylint: disable=import-error,no-name-in-module
from physics.dynamics import discrete_bath_oracle, emission_dynamics, pseudomode_dynamics  # pylint: disable=import-error,no-name-in-module
from utils.cli_app import Command  # pylint: disable=import-error,no-name-in-module
from utils.storage import ResultStore  # pylint: disable=import-error,no-name-in-module

if TYPE_CHECKING:
    from utils.cli_app import ProbeApp  # pylint: disable=import-error,no-name-in-module


class Oracle(Command):
    """Mode-count sweep of the discrete-bath oracle."""

    name = "oracle"
    description = "sweep the discrete-bath mode count against an exact reference"

    def run(self, cfg: RunConfig, store: ResultStore, args: argparse.Namespace) -> int:
        sd = self.require_sd(cfg)
        probe = cfg.require_probe(need_grid=False)
        settings = cfg.dynamics
        t_max = default_t_max(sd, probe, cfg)

        if sd.kind is SpectralDensityKind.LORENTZIAN:
            reference = pseudomode_dynamics(sd, probe.omega_0, t_max, settings.n_t)
            store.write_history("pseudomode.csv", reference)
            reference_name = "pseudomode"
        else:
            reference = emission_dynamics(sd, probe.omega_0, t_max, settings.n_t)
            store.write_history("emission.csv", reference)
            reference_name = "spectral"

        deviations = []
        for n_modes in settings.n_modes_sweep:
            history = discrete_bath_oracle(sd, probe.omega_0, n_modes, t_max, settings.n_t)
            store.write_history(f"oracle_{n_modes}.csv", history)
            deviations.append(max_abs_deviation(history, reference))
            self.logger.info("%d modes: max ||eps| - |eps_ref|| = %.3g", n_modes, deviations[-1])

        store.write_json(
            "oracle_summary.json",
            {
                "reference": reference_name,
                "t_max": t_max,
                "n_modes": list(settings.n_modes_sweep),
                "max_abs_deviation": deviations,
            },
        )
        return 0


def setup(app: ProbeApp) -> None:
    """
    Registers the oracle command.

    Parameters
    ----------
    app : ProbeApp
        The application to register with.
    """
    app.add_command(Oracle)

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
The ``decay`` subcommand: spontaneous emission of the probe into the reservoir.

Writes ``emission.csv`` (spectral representation), ``oracle.csv`` (discrete
bath) and ``decay_summary.json`` with the golden-rule rate, the fitted rate
and the largest deviation between the two histories.
"""

from __future__ import annotations

import argparse
import math
from typing import TYPE_CHECKING

import numpy as np

from models.probe import ProbeConfig  # pylint: disable=import-error,no-name-in-module
from models.run_config import RunConfig  # pylint: disable=import-error,no-name-in-module
from models.spectra import EmissionHistory  # pylint: disable=import-error,no-name-in-module
from models.spectral_density import SpectralDensity  # pylint: disable=import-error,no-name-in-module
from physics.dynamics import discrete_bath_oracle, emission_dynamics, fit_decay_rate  # pylint: disable=import-error,no-name-in-module
from physics.forward import fgr_rate  # pylint: disable=import-error,no-name-in-module
from utils.cli_app import Command  # pylint: disable=import-error,no-name-in-module
from utils.storage import ResultStore, finite_or_none  # pylint: disable=import-error,no-name-in-module

if TYPE_CHECKING:
    from utils.cli_app import ProbeApp  # pylint: disable=import-error,no-name-in-module

# Lifetimes covered when t_max is not configured
DEFAULT_LIFETIMES = 3.0


def default_t_max(sd: SpectralDensity, probe: ProbeConfig, cfg: RunConfig) -> float:
    """
    Final time of a decay run.

    The configured ``dynamics.t_max`` wins; otherwise three golden-rule
    lifetimes, or three waveguide lifetimes 1 / (V**2 / v) when the golden-rule
    rate vanishes.
    """
    if cfg.dynamics.t_max is not None:
        return cfg.dynamics.t_max
    rate = fgr_rate(sd, probe.omega_0)
    return DEFAULT_LIFETIMES / (rate if rate > 0 else probe.waveguide_rate)


def max_abs_deviation(first: EmissionHistory, second: EmissionHistory) -> float:
    """Largest difference of |eps(t)| between two histories on the same times."""
    return float(np.max(np.abs(np.abs(first.amplitude) - np.abs(second.amplitude))))


class Decay(Command):
    """Emission dynamics against the discrete-bath oracle and the golden rule."""

    name = "decay"
    description = "compute the excited-state amplitude and compare it with the discrete-bath oracle"

    def run(self, cfg: RunConfig, store: ResultStore, args: argparse.Namespace) -> int:
        sd = self.require_sd(cfg)
        probe = cfg.require_probe(need_grid=False)
        settings = cfg.dynamics
        t_max = default_t_max(sd, probe, cfg)

        history = emission_dynamics(sd, probe.omega_0, t_max, settings.n_t)
        oracle = discrete_bath_oracle(sd, probe.omega_0, settings.n_modes, t_max, settings.n_t)
        store.write_history("emission.csv", history)
        store.write_history("oracle.csv", oracle)

        rate = fgr_rate(sd, probe.omega_0)
        try:
            fitted = fit_decay_rate(history)
        except ValueError as ex:
            self.logger.warning("Decay rate not fitted: %s", ex)
            fitted = math.nan

        deviation = max_abs_deviation(history, oracle)
        store.write_json(
            "decay_summary.json",
            {
                "fgr_rate": rate,
                "fitted_rate": finite_or_none(fitted),
                "max_abs_deviation": deviation,
                "n_modes": settings.n_modes,
                "t_max": t_max,
            },
        )
        self.logger.info("FGR rate %.6g, fitted rate %.6g, oracle deviation %.3g", rate, fitted, deviation)
        return 0


def setup(app: ProbeApp) -> None:
    """
    Registers the decay command.

    Parameters
    ----------
    app : ProbeApp
        The application to register with.
    """
    app.add_command(Decay)

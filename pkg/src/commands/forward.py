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
The ``forward`` subcommand.

Writes ``spectrum.csv`` (omega, r, t, R, T, A), ``density.csv`` (J on the
grid) and, for parametric densities, ``sd.json``. With noise configured it
also writes ``measured.csv`` with ``sigma_R``/``sigma_T`` columns, ready for
``reconstruct``.
"""

from __future__ import annotations

import argparse
from typing import TYPE_CHECKING

import numpy as np

from models.run_config import RunConfig  # pylint: disable=import-error,no-name-in-module
from models.spectral_density import SpectralDensityKind  # pylint: disable=import-error,no-name-in-module
from physics.forward import forward_spectrum  # pylint: disable=import-error,no-name-in-module
from physics.reconstruct import inject_noise  # pylint: disable=import-error,no-name-in-module
from utils.cli_app import Command  # pylint: disable=import-error,no-name-in-module
from utils.storage import ResultStore  # pylint: disable=import-error,no-name-in-module

if TYPE_CHECKING:
    from utils.cli_app import ProbeApp  # pylint: disable=import-error,no-name-in-module


class Forward(Command):
    """Scattering spectrum of a probe dressed by a spectral density."""

    name = "forward"
    description = "compute the reflection/transmission spectrum for a spectral density"

    def needs_seed(self, cfg: RunConfig, args: argparse.Namespace) -> bool:
        return cfg.noise is not None

    def run(self, cfg: RunConfig, store: ResultStore, args: argparse.Namespace) -> int:
        sd = self.require_sd(cfg)
        probe = cfg.require_probe()
        assert probe.grid is not None
        grid = probe.grid

        spectrum = forward_spectrum(sd, probe)
        store.write_spectrum("spectrum.csv", spectrum)
        store.write_table("density.csv", ("omega", "J"), [[float(v) for v in grid.omega], [float(v) for v in sd.evaluate(grid.omega)]])
        if sd.kind is not SpectralDensityKind.TABULATED:
            store.write_sd("sd.json", sd)

        if cfg.noise is not None:
            rng = np.random.default_rng(cfg.seed)
            measured = inject_noise(spectrum, cfg.noise.sigma_r, cfg.noise.sigma_t, rng)
            store.write_measured("measured.csv", measured)
            self.logger.info("Added noise sigma_R = %g, sigma_T = %g", cfg.noise.sigma_r, cfg.noise.sigma_t)

        self.logger.info("Wrote forward spectrum to %s", store.output_dir)
        return 0


def setup(app: ProbeApp) -> None:
    """
    Registers the forward command.

    Parameters
    ----------
    app : ProbeApp
        The application to register with.
    """
    app.add_command(Forward)

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
The ``experiment`` subcommand: closed-form spectra of the circuit experiments.

Writes ``spectrum.csv`` and ``experiment_summary.json`` for either model. The
transmon run adds ``transmon_flatness.csv`` with the reconstructed and the
closed-form flatness function; the cavity run adds ``reconstruction.csv`` and
the non-Markovianity ratio.
"""

from __future__ import annotations

import argparse
from typing import TYPE_CHECKING

import numpy as np

from commands.reconstruct import report_verdict  # pylint: disable=import-error,no-name-in-module
from models.experiment import CavityCpbModelParams, ExperimentModel, TransmonModelParams  # pylint: disable=import-error,no-name-in-module
from models.run_config import RunConfig  # pylint: disable=import-error,no-name-in-module
from models.spectra import MeasuredSpectrum  # pylint: disable=import-error,no-name-in-module
from physics.experiments import (  # pylint: disable=import-error,no-name-in-module
    cavity_cpb_spectrum,
    nonmarkovianity_ratio,
    transmon_flatness,
    transmon_spectrum,
)
from physics.reconstruct import flatness_function, reconstruct_sd  # pylint: disable=import-error,no-name-in-module
from utils.cli_app import Command  # pylint: disable=import-error,no-name-in-module
from utils.storage import ResultStore  # pylint: disable=import-error,no-name-in-module

if TYPE_CHECKING:
    from utils.cli_app import ProbeApp  # pylint: disable=import-error,no-name-in-module


class Experiment(Command):
    """Closed-form experiment spectra with their flatness analysis."""

    name = "experiment"
    description = "generate a transmon or cavity+CPB spectrum and analyse it"

    def run(self, cfg: RunConfig, store: ResultStore, args: argparse.Namespace) -> int:
        spec = cfg.require_experiment()
        grid = cfg.require_grid()
        r_floor = cfg.reconstruction.r_floor
        summary: dict[str, object] = {"model": str(spec.model)}

        if spec.model is ExperimentModel.TRANSMON:
            assert isinstance(spec.params, TransmonModelParams)
            params = spec.params
            spectrum = transmon_spectrum(params, grid)
            measured = MeasuredSpectrum.from_spectrum(spectrum)
            reconstructed = flatness_function(measured, r_floor)
            closed_form = transmon_flatness(params, grid)
            store.write_table(
                "transmon_flatness.csv",
                ("omega", "f", "f_closed"),
                [[float(v) for v in grid.omega], [float(v) for v in reconstructed], [float(v) for v in closed_form]],
            )
            finite = np.isfinite(reconstructed)
            summary["regime"] = str(params.regime)
            summary["max_flatness_error"] = float(np.max(np.abs(reconstructed[finite] - closed_form[finite]))) if finite.any() else None
            self.logger.info("Transmon run labelled %s", params.regime)
        else:
            assert isinstance(spec.params, CavityCpbModelParams)
            params = spec.params
            spectrum = cavity_cpb_spectrum(params, grid)
            measured = MeasuredSpectrum.from_spectrum(spectrum)
            store.write_reconstruction("reconstruction.csv", reconstruct_sd(measured, params.coupling, params.velocity, r_floor))
            ratio = nonmarkovianity_ratio(params)
            summary["nonmarkovianity_ratio"] = ratio
            summary["non_markovian"] = ratio > 1.0
            self.logger.info("Cavity+CPB ratio 4g^2/Gamma_1^2 = %.6g", ratio)

        store.write_spectrum("spectrum.csv", spectrum)
        summary["markovian"] = report_verdict(self, measured, cfg, store)
        store.write_json("experiment_summary.json", summary)
        return 0


def setup(app: ProbeApp) -> None:
    """
    Registers the experiment command.

    Parameters
    ----------
    app : ProbeApp
        The application to register with.
    """
    app.add_command(Experiment)

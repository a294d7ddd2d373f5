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
The ``reconstruct`` and ``flatness`` subcommands.

Both print the Markovianity verdict on standard output as
``markovian: yes|no|undetermined``.

Classes
-------
Reconstruct
    Spectral density and flatness from a measured spectrum file.
Flatness
    Flatness function from a spectrum file or a simulated spectrum.

Functions
---------
setup(app)
    Registers both commands.
"""

from __future__ import annotations

import argparse
from typing import TYPE_CHECKING

import numpy as np

from models.run_config import RunConfig  # pylint: disable=import-error,no-name-in-module
from models.spectra import MeasuredSpectrum, PointFlag, Verdict  # pylint: disable=import-error,no-name-in-module
from physics.forward import forward_spectrum  # pylint: disable=import-error,no-name-in-module
from physics.reconstruct import flatness_function, markovianity_verdict, monte_carlo_sigma, propagate_noise, reconstruct_sd  # pylint: disable=import-error,no-name-in-module
from utils.cli_app import Command  # pylint: disable=import-error,no-name-in-module
from utils.errors import ConfigError, InsufficientData  # pylint: disable=import-error,no-name-in-module
from utils.storage import ResultStore  # pylint: disable=import-error,no-name-in-module

if TYPE_CHECKING:
    from utils.cli_app import ProbeApp  # pylint: disable=import-error,no-name-in-module


def report_verdict(command: Command, ms: MeasuredSpectrum, cfg: RunConfig, store: ResultStore) -> str:
    """
    Write ``flatness.csv`` and print the Markovianity verdict.

    Parameters
    ----------
    command : Command
        The running command, for logging.
    ms : MeasuredSpectrum
        Spectrum the flatness function is computed from.
    cfg : RunConfig
        Run configuration.
    store : ResultStore
        Output directory.

    Returns
    -------
    str
        ``yes``, ``no`` or ``undetermined``.
    """
    settings = cfg.reconstruction
    flatness = flatness_function(ms, settings.r_floor)
    store.write_table("flatness.csv", ("omega", "f"), [[float(v) for v in ms.grid.omega], [float(v) for v in flatness]])
    try:
        verdict = markovianity_verdict(flatness, settings.rel_tol)
        label = "yes" if verdict is Verdict.FLAT else "no"
    except InsufficientData as ex:
        command.logger.warning("No Markovianity verdict: %s", ex)
        label = "undetermined"

    finite = flatness[np.isfinite(flatness)]
    summary = {
        "markovian": label,
        "rel_tol": settings.rel_tol,
        "usable_points": int(finite.size),
        "median_f": float(np.median(finite)) if finite.size else None,
        "spread_f": float(finite.max() - finite.min()) if finite.size else None,
    }
    store.write_json("verdict.json", summary)
    print(f"markovian: {label}")
    return label


class Reconstruct(Command):
    """Spectral density from a measured reflectance/transmittance file."""

    name = "reconstruct"
    description = "reconstruct J(omega) from a measured spectrum and test it for flatness"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--spectrum", help="input spectrum CSV (overrides the 'spectrum' config entry)")
        parser.add_argument("--replicas", type=int, default=0, help="Monte-Carlo replicas for an empirical sigma_J (needs sigma columns)")

    def needs_seed(self, cfg: RunConfig, args: argparse.Namespace) -> bool:
        return args.replicas > 0

    def run(self, cfg: RunConfig, store: ResultStore, args: argparse.Namespace) -> int:
        path = args.spectrum or cfg.require_spectrum_path()
        ms = ResultStore.read_measured_spectrum(path)
        probe = cfg.require_probe(need_grid=False)
        r_floor = cfg.reconstruction.r_floor

        if ms.has_uncertainty:
            result = propagate_noise(ms, probe.coupling, probe.velocity, r_floor)
        else:
            result = reconstruct_sd(ms, probe.coupling, probe.velocity, r_floor)
        store.write_reconstruction("reconstruction.csv", result)

        if args.replicas > 0:
            if ms.sigma_r is None or ms.sigma_t is None:
                raise ConfigError("Monte-Carlo replicas need a spectrum with sigma_R and sigma_T columns")
            # Only constant noise levels are supported by the replica draw
            spread = monte_carlo_sigma(
                ms.reflectance,
                ms.transmittance,
                float(np.max(ms.sigma_r)),
                float(np.max(ms.sigma_t)),
                probe.coupling,
                probe.velocity,
                n_replicas=args.replicas,
                seed=cfg.seed,
            )
            store.write_table("monte_carlo.csv", ("omega", "sigma_J"), [[float(v) for v in ms.grid.omega], [float(v) for v in spread]])

        self.logger.info("Reconstructed %d points from %s (%d ok)", len(ms.grid), path, result.count(PointFlag.OK))
        report_verdict(self, ms, cfg, store)
        return 0


class Flatness(Command):
    """Flatness function of a spectrum file or of a simulated spectrum."""

    name = "flatness"
    description = "compute the flatness function f(omega) and the Markovianity verdict"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--spectrum", help="input spectrum CSV (overrides the 'spectrum' config entry)")

    def run(self, cfg: RunConfig, store: ResultStore, args: argparse.Namespace) -> int:
        path = args.spectrum or cfg.spectrum_path
        if path is not None:
            ms = ResultStore.read_measured_spectrum(path)
        elif cfg.sd is not None or cfg.sd_path is not None:
            ms = MeasuredSpectrum.from_spectrum(forward_spectrum(self.require_sd(cfg), cfg.require_probe()))
        else:
            raise ConfigError("The flatness command needs a 'spectrum' path or an 'sd' section")
        report_verdict(self, ms, cfg, store)
        return 0


def setup(app: ProbeApp) -> None:
    """
    Registers the reconstruct and flatness commands.

    Parameters
    ----------
    app : ProbeApp
        The application to register with.
    """
    app.add_command(Reconstruct)
    app.add_command(Flatness)

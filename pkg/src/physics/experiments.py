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
Closed-form scattering models of two superconducting-circuit experiments.

``transmon``
    A weakly driven transmon side-coupled to a transmission line, with
    intrinsic loss and pure dephasing.
``cavity_cpb``
    A waveguide-probed cavity coupled to a lossy Cooper-pair box. Seen from the
    cavity the box is a Lorentzian reservoir, so this model must agree with the
    generic forward chain fed with that Lorentzian.
"""

import logging

import numpy as np

from models.experiment import CavityCpbModelParams, TransmonModelParams  # pylint: disable=import-error,no-name-in-module
from models.probe import FrequencyGrid, ProbeConfig, as_grid  # pylint: disable=import-error,no-name-in-module
from models.spectra import ScatteringSpectrum  # pylint: disable=import-error,no-name-in-module
from models.spectral_density import SpectralDensity  # pylint: disable=import-error,no-name-in-module

LOGGER = logging.getLogger("sdprobe.experiments")


def transmon_spectrum(p: TransmonModelParams, grid: FrequencyGrid) -> ScatteringSpectrum:
    """
    Field reflection and transmission of the driven transmon.

    r = -(G_eg / 2 gamma) (1 - i d / gamma) / (1 + (d / gamma)**2 + W**2 / ((G_eg + G_l) gamma))
    with d = omega - omega_0, W the Rabi frequency and t = 1 + r.

    Parameters
    ----------
    p : TransmonModelParams
        Model parameters.
    grid : FrequencyGrid
        Probe frequencies.

    Returns
    -------
    ScatteringSpectrum
        The spectrum.
    """
    grid = as_grid(grid)
    gamma = p.gamma
    detuning = (grid.omega - p.omega_0) / gamma
    saturation = p.rabi**2 / ((p.gamma_eg + p.gamma_l) * gamma)
    r = -(p.gamma_eg / (2.0 * gamma)) * (1.0 - 1j * detuning) / (1.0 + detuning**2 + saturation)
    if p.rabi > 0:
        LOGGER.info("Transmon drive is non-zero; the run is labelled %s", p.regime)
    return ScatteringSpectrum.from_reflection(grid, r)


def transmon_flatness(p: TransmonModelParams, grid: FrequencyGrid) -> np.ndarray:
    """
    Closed-form flatness function of the driven transmon.

    Parameters
    ----------
    p : TransmonModelParams
        Model parameters.
    grid : FrequencyGrid
        Probe frequencies.

    Returns
    -------
    numpy.ndarray
        f(omega); constant when the drive vanishes.
    """
    grid = as_grid(grid)
    detuning = grid.omega - p.omega_0
    total = p.gamma_eg + p.gamma_l + 2.0 * p.gamma_phi
    constant = 2.0 * (p.gamma_l + 2.0 * p.gamma_phi) / p.gamma_eg
    driven = 4.0 * total**2 * p.rabi**2 / (p.gamma_eg * (p.gamma_eg + p.gamma_l) * (total**2 + 4.0 * detuning**2))
    return constant + driven


def cavity_cpb_spectrum(p: CavityCpbModelParams, grid: FrequencyGrid) -> ScatteringSpectrum:
    """
    Reflection and transmission of the cavity coupled to a Cooper-pair box.

    r = -i k (omega - omega_1 + i G_1) / ((omega - omega_1 + i G_1)(omega - omega_0 + i k) - g**2)
    with k = V**2 / v and t = 1 + r.

    Parameters
    ----------
    p : CavityCpbModelParams
        Model parameters.
    grid : FrequencyGrid
        Probe frequencies.

    Returns
    -------
    ScatteringSpectrum
        The spectrum.
    """
    grid = as_grid(grid)
    rate = p.waveguide_rate
    box = grid.omega - p.omega_1 + 1j * p.gamma_1
    cavity = grid.omega - p.omega_0 + 1j * rate
    r = -1j * rate * box / (box * cavity - p.g**2)
    return ScatteringSpectrum.from_reflection(grid, r)


def nonmarkovianity_ratio(p: CavityCpbModelParams) -> float:
    """
    Ratio 4 g**2 / G_1**2; resonant dynamics is non-Markovian when it exceeds 1.

    Parameters
    ----------
    p : CavityCpbModelParams
        Model parameters.

    Returns
    -------
    float
        The ratio.
    """
    return 4.0 * p.g**2 / p.gamma_1**2


def cavity_spectral_density(p: CavityCpbModelParams) -> SpectralDensity:
    """Lorentzian reservoir the Cooper-pair box presents to the cavity."""
    if p.g == 0:
        return SpectralDensity.zero()
    return SpectralDensity.lorentzian(p.g, p.gamma_1, p.omega_1)


def cavity_probe(p: CavityCpbModelParams, grid: FrequencyGrid) -> ProbeConfig:
    """Probe configuration matching the cavity's waveguide coupling."""
    return ProbeConfig(p.omega_0, p.coupling, p.velocity, as_grid(grid))

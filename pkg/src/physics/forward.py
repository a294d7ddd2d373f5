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
Forward scattering chain.

J(omega) -> Sigma(omega) -> emission amplitude -> effective potential W -> (r, t, A).

The emission amplitude is evaluated on the real axis as the boundary value
omega + i0, so Sigma = P - i * pi * J with no artificial broadening. Where J
vanishes and omega - omega_0 - P(omega) is exactly zero the amplitude has a
real pole; such points carry the marker ``complex(inf, 0)`` and scatter as a
perfect mirror (r = -1, t = 0).
"""

import logging
import math
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike

from models.probe import FrequencyGrid, ProbeConfig, as_grid  # pylint: disable=import-error,no-name-in-module
from models.spectra import EffectivePotential, ScatteringSpectrum, SelfEnergy  # pylint: disable=import-error,no-name-in-module
from models.spectral_density import SpectralDensity  # pylint: disable=import-error,no-name-in-module
from physics.quadrature import DEFAULT_EPSREL, principal_value  # pylint: disable=import-error,no-name-in-module

LOGGER = logging.getLogger("sdprobe.forward")

DIVERGENT = complex(math.inf, 0.0)


def principal_parts(sd: SpectralDensity, omega: ArrayLike, epsrel: float = DEFAULT_EPSREL) -> np.ndarray:
    """
    Principal-value part P(omega) of the self-energy at each frequency.

    Parameters
    ----------
    sd : SpectralDensity
        Spectral density.
    omega : array_like
        Frequencies.
    epsrel : float, optional
        Relative quadrature tolerance.

    Returns
    -------
    numpy.ndarray
        P(omega).

    Raises
    ------
    QuadratureFailure
        If a principal value does not converge.
    """
    omega = np.atleast_1d(np.asarray(omega, dtype=float))
    if sd.is_null:
        return np.zeros_like(omega)
    density = sd.scalar()
    features = sd.features
    peak = sd.peak_value
    # Each point is computed independently of the others
    return np.array([principal_value(density, sd.support, float(point), features, peak, epsrel) for point in omega])


def self_energy(sd: SpectralDensity, grid: FrequencyGrid | ArrayLike, epsrel: float = DEFAULT_EPSREL) -> SelfEnergy:
    """
    Self-energy Sigma(omega) = P(omega) - i * pi * J(omega) on a grid.

    Parameters
    ----------
    sd : SpectralDensity
        Spectral density of the reservoir.
    grid : FrequencyGrid or array_like
        Frequencies, inside or outside the support.
    epsrel : float, optional
        Relative quadrature tolerance of the principal value.

    Returns
    -------
    SelfEnergy
        Principal part and spectral density on the grid.

    Raises
    ------
    QuadratureFailure
        If the principal value does not converge.
    """
    grid = as_grid(grid)
    principal = principal_parts(sd, grid.omega, epsrel)
    density = sd.evaluate(grid.omega)
    LOGGER.debug("Self-energy of '%s' computed on %d points", sd.kind, len(grid))
    return SelfEnergy(grid, principal, density)


def emission_amplitude(se: SelfEnergy, omega_0: float) -> np.ndarray:
    """
    Laplace-domain emission amplitude 1 / (omega - omega_0 - Sigma(omega)).

    Parameters
    ----------
    se : SelfEnergy
        Self-energy on a grid.
    omega_0 : float
        Probe transition frequency.

    Returns
    -------
    numpy.ndarray
        Complex amplitude, ``complex(inf, 0)`` at real poles.
    """
    denominator = (se.grid.omega - omega_0 - se.principal) + 1j * math.pi * se.density
    divergent = denominator == 0
    amplitude = np.full(denominator.shape, DIVERGENT, dtype=complex)
    amplitude[~divergent] = 1.0 / denominator[~divergent]
    if np.any(divergent):
        LOGGER.debug("Emission amplitude diverges at %d grid points", int(np.count_nonzero(divergent)))
    return amplitude


def effective_potential(amplitude: ArrayLike, coupling: float, grid: Optional[FrequencyGrid] = None) -> EffectivePotential:
    """
    Effective potential W = V**2 * amplitude.

    Parameters
    ----------
    amplitude : array_like
        Emission amplitude from ``emission_amplitude``.
    coupling : float
        Probe-waveguide coupling V.
    grid : FrequencyGrid, optional
        Frequencies the amplitude was computed on.

    Returns
    -------
    EffectivePotential
        W, with divergence markers carried over.
    """
    amplitude = np.atleast_1d(np.asarray(amplitude, dtype=complex))
    divergent = np.isinf(amplitude.real) | np.isinf(amplitude.imag)
    values = np.full(amplitude.shape, DIVERGENT, dtype=complex)
    values[~divergent] = coupling**2 * amplitude[~divergent]
    return EffectivePotential(values, grid)


def reflection_transmission(wp: EffectivePotential, velocity: float, grid: Optional[FrequencyGrid] = None) -> ScatteringSpectrum:
    """
    Scattering coefficients of a point potential in a one-dimensional waveguide.

    With w = W / v, r = -i w / (1 + i w) and t = 1 + r. The absorbance is
    computed independently as 2 w_I / (w_R**2 + (1 + w_I)**2).

    Parameters
    ----------
    wp : EffectivePotential
        Effective potential.
    velocity : float
        Group velocity v.
    grid : FrequencyGrid, optional
        Frequencies, when ``wp`` does not carry them.

    Returns
    -------
    ScatteringSpectrum
        r, t and A; r = -1, t = 0, A = 0 at divergence markers.

    Raises
    ------
    ValueError
        If no grid is available.
    """
    grid = grid if grid is not None else wp.grid
    if grid is None:
        raise ValueError("Scattering coefficients need the frequency grid of the potential")

    divergent = wp.divergent
    finite = ~divergent
    scaled = wp.values[finite] / velocity

    r = np.full(wp.values.shape, -1.0 + 0.0j, dtype=complex)
    t = np.zeros(wp.values.shape, dtype=complex)
    absorbance = np.zeros(wp.values.shape, dtype=float)

    r[finite] = -1j * scaled / (1.0 + 1j * scaled)
    t[finite] = 1.0 + r[finite]
    real_part, absorptive = scaled.real, -scaled.imag
    absorbance[finite] = 2.0 * absorptive / (real_part**2 + (1.0 + absorptive) ** 2)
    return ScatteringSpectrum(grid, r, t, absorbance)


def forward_spectrum(sd: SpectralDensity, cfg: ProbeConfig, epsrel: float = DEFAULT_EPSREL) -> ScatteringSpectrum:
    """
    Single-photon spectrum of a probe dressed by a reservoir.

    Parameters
    ----------
    sd : SpectralDensity
        Spectral density of the reservoir.
    cfg : ProbeConfig
        Probe parameters and frequency grid.
    epsrel : float, optional
        Relative quadrature tolerance of the principal value.

    Returns
    -------
    ScatteringSpectrum
        Reflection, transmission and absorbance on ``cfg.grid``.

    Raises
    ------
    ValueError
        If the probe configuration has no grid.
    QuadratureFailure
        If the principal value does not converge.
    """
    if cfg.grid is None:
        raise ValueError("Forward spectrum needs a probe frequency grid")
    se = self_energy(sd, cfg.grid, epsrel)
    amplitude = emission_amplitude(se, cfg.omega_0)
    wp = effective_potential(amplitude, cfg.coupling, cfg.grid)
    spectrum = reflection_transmission(wp, cfg.velocity)
    LOGGER.info("Forward spectrum of '%s' on %d points (V^2/v = %.6g)", sd.kind, len(cfg.grid), cfg.waveguide_rate)
    return spectrum


def fgr_rate(sd: SpectralDensity, omega_0: float) -> float:
    """
    Golden-rule decay rate 2 * pi * J(omega_0).

    Parameters
    ----------
    sd : SpectralDensity
        Spectral density.
    omega_0 : float
        Probe transition frequency.

    Returns
    -------
    float
        The rate, zero when omega_0 lies in a gap.
    """
    return 2.0 * math.pi * sd.value(omega_0)

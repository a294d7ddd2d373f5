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
Spectral-density reconstruction from reflectance and transmittance.

The inversion J = (V**2 / (2 pi v)) * (1 - R - T) / R needs only intensity
spectra and the probe calibration (V and v), which are taken as exact inputs.
Points are never clamped: small negative values are reported as measured and
flagged.

Flag precedence, highest first: ``low_reflectance`` (R below the floor, J set
to NaN), ``flux_violation`` (R + T exceeds 1 beyond the noise tolerance),
``nonphysical_negative`` (J < 0 within tolerance), ``ok``.
"""

import logging
import math
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike

from models.spectra import EffectivePotential, MeasuredSpectrum, PointFlag, ReconstructionResult, ScatteringSpectrum, Verdict  # pylint: disable=import-error,no-name-in-module
from utils.errors import GridMismatch, InsufficientData, MissingUncertainty  # pylint: disable=import-error,no-name-in-module

LOGGER = logging.getLogger("sdprobe.reconstruct")

DEFAULT_R_FLOOR = 1e-6
DEFAULT_REL_TOL = 1e-2
MIN_VERDICT_POINTS = 8

# Flux tolerance when the spectrum carries no uncertainties
EXACT_FLUX_TOLERANCE = 1e-12


def _prefactor(coupling: float, velocity: float) -> float:
    return coupling**2 / (2.0 * math.pi * velocity)


def _flux_tolerance(ms: MeasuredSpectrum) -> np.ndarray:
    if ms.sigma_r is not None and ms.sigma_t is not None:
        return np.maximum(3.0 * np.hypot(ms.sigma_r, ms.sigma_t), EXACT_FLUX_TOLERANCE)
    return np.full(len(ms.grid), EXACT_FLUX_TOLERANCE)


def classify_points(ms: MeasuredSpectrum, r_floor: float = DEFAULT_R_FLOOR) -> tuple[PointFlag, ...]:
    """
    Validity flag of every point of a measured spectrum.

    Parameters
    ----------
    ms : MeasuredSpectrum
        Measured spectrum.
    r_floor : float, optional
        Smallest usable reflectance.

    Returns
    -------
    tuple[PointFlag, ...]
        One flag per grid point.
    """
    if not r_floor > 0:
        raise ValueError("r_floor must be positive")
    absorbed = 1.0 - ms.reflectance - ms.transmittance
    tolerance = _flux_tolerance(ms)
    flags = []
    for reflectance, loss, limit in zip(ms.reflectance, absorbed, tolerance):
        if reflectance < r_floor:
            flags.append(PointFlag.LOW_REFLECTANCE)
        elif loss < -limit:
            flags.append(PointFlag.FLUX_VIOLATION)
        elif loss < 0:
            flags.append(PointFlag.NONPHYSICAL_NEGATIVE)
        else:
            flags.append(PointFlag.OK)
    return tuple(flags)


def _ratio(ms: MeasuredSpectrum, flags: tuple[PointFlag, ...]) -> np.ndarray:
    low = np.array([flag is PointFlag.LOW_REFLECTANCE for flag in flags], dtype=bool)
    ratio = np.full(len(ms.grid), np.nan)
    keep = ~low
    ratio[keep] = (1.0 - ms.reflectance[keep] - ms.transmittance[keep]) / ms.reflectance[keep]
    return ratio


def _log_flags(flags: tuple[PointFlag, ...]) -> None:
    for flag in (PointFlag.LOW_REFLECTANCE, PointFlag.FLUX_VIOLATION, PointFlag.NONPHYSICAL_NEGATIVE):
        count = sum(1 for item in flags if item is flag)
        if count:
            LOGGER.warning("%d of %d points flagged %s", count, len(flags), flag)


def reconstruct_sd(ms: MeasuredSpectrum, coupling: float, velocity: float, r_floor: float = DEFAULT_R_FLOOR) -> ReconstructionResult:
    """
    Reconstruct the spectral density from a measured spectrum.

    Parameters
    ----------
    ms : MeasuredSpectrum
        Reflectance and transmittance on a grid.
    coupling : float
        Probe-waveguide coupling V.
    velocity : float
        Group velocity v.
    r_floor : float, optional
        Points with R below this value are flagged ``low_reflectance``.

    Returns
    -------
    ReconstructionResult
        J on the grid with per-point flags.

    Raises
    ------
    GridMismatch
        If the spectrum arrays differ in length from the grid.
    """
    if ms.reflectance.size != ms.transmittance.size:
        raise GridMismatch("Reflectance and transmittance differ in length")
    flags = classify_points(ms, r_floor)
    density = _prefactor(coupling, velocity) * _ratio(ms, flags)
    _log_flags(flags)
    LOGGER.debug("Reconstructed J on %d points (%d ok)", len(flags), sum(1 for flag in flags if flag is PointFlag.OK))
    return ReconstructionResult(ms.grid, density, flags)


def flatness_function(ms: MeasuredSpectrum, r_floor: float = DEFAULT_R_FLOOR) -> np.ndarray:
    """
    Flatness function f = (1 - R - T) / R.

    f is proportional to the reconstructed J and does not depend on the probe
    calibration. A frequency-independent f signals a flat spectral density.

    Parameters
    ----------
    ms : MeasuredSpectrum
        Measured spectrum.
    r_floor : float, optional
        Smallest usable reflectance.

    Returns
    -------
    numpy.ndarray
        f per grid point; NaN at ``low_reflectance`` and ``flux_violation`` points.

    Raises
    ------
    GridMismatch
        If the spectrum arrays differ in length from the grid.
    """
    if ms.reflectance.size != ms.transmittance.size:
        raise GridMismatch("Reflectance and transmittance differ in length")
    flags = classify_points(ms, r_floor)
    ratio = _ratio(ms, flags)
    violated = np.array([flag is PointFlag.FLUX_VIOLATION for flag in flags], dtype=bool)
    ratio[violated] = np.nan
    return ratio


def markovianity_verdict(f_values: ArrayLike, rel_tol: float = DEFAULT_REL_TOL) -> Verdict:
    """
    Decide whether a flatness function is constant.

    Flat iff (max f - min f) / |median f| <= rel_tol over the finite entries.
    A zero median is flat only when every value is identical.

    Parameters
    ----------
    f_values : array_like
        Flatness function, NaN at flagged points.
    rel_tol : float, optional
        Allowed relative spread.

    Returns
    -------
    Verdict
        ``flat`` or ``structured``.

    Raises
    ------
    InsufficientData
        If fewer than 8 finite values remain.
    """
    values = np.asarray(f_values, dtype=float)
    usable = values[np.isfinite(values)]
    if usable.size < MIN_VERDICT_POINTS:
        raise InsufficientData(f"Flatness verdict needs at least {MIN_VERDICT_POINTS} usable points, got {usable.size}")

    spread = float(np.max(usable) - np.min(usable))
    median = float(np.median(usable))
    if median == 0.0:
        return Verdict.FLAT if spread == 0.0 else Verdict.STRUCTURED
    ratio = spread / abs(median)
    LOGGER.debug("Flatness spread %.6g relative to median %.6g (ratio %.3g)", spread, median, ratio)
    return Verdict.FLAT if ratio <= rel_tol else Verdict.STRUCTURED


def propagate_noise(ms: MeasuredSpectrum, coupling: float, velocity: float, r_floor: float = DEFAULT_R_FLOOR) -> ReconstructionResult:
    """
    Reconstruction with first-order uncertainty of J.

    sigma_J**2 = (dJ/dR)**2 sigma_R**2 + (dJ/dT)**2 sigma_T**2 with
    dJ/dR = -k (1 - T) / R**2, dJ/dT = -k / R and k = V**2 / (2 pi v).

    Parameters
    ----------
    ms : MeasuredSpectrum
        Measured spectrum with uncertainties.
    coupling : float
        Probe-waveguide coupling V.
    velocity : float
        Group velocity v.
    r_floor : float, optional
        Smallest usable reflectance.

    Returns
    -------
    ReconstructionResult
        Reconstruction with ``sigma`` filled in (NaN at low-reflectance points).

    Raises
    ------
    MissingUncertainty
        If the spectrum has no uncertainties.
    """
    if ms.sigma_r is None or ms.sigma_t is None:
        raise MissingUncertainty("Noise propagation needs sigma_R and sigma_T")
    result = reconstruct_sd(ms, coupling, velocity, r_floor)
    prefactor = _prefactor(coupling, velocity)

    sigma = np.full(len(ms.grid), np.nan)
    keep = ~np.isnan(result.density)
    reflectance = ms.reflectance[keep]
    by_reflectance = -prefactor * (1.0 - ms.transmittance[keep]) / reflectance**2
    by_transmittance = -prefactor / reflectance
    sigma[keep] = np.hypot(by_reflectance * ms.sigma_r[keep], by_transmittance * ms.sigma_t[keep])
    return ReconstructionResult(result.grid, result.density, result.flags, sigma)


def potential_density(wp: EffectivePotential, coupling: float) -> np.ndarray:
    """
    Spectral density read off the effective potential, (V**2 / pi) W_I / |W|**2.

    Parameters
    ----------
    wp : EffectivePotential
        Effective potential.
    coupling : float
        Probe-waveguide coupling V.

    Returns
    -------
    numpy.ndarray
        J; zero at divergence markers.
    """
    density = np.zeros(wp.values.shape)
    finite = ~wp.divergent
    magnitude = np.abs(wp.values[finite]) ** 2
    density[finite] = coupling**2 / math.pi * wp.absorptive[finite] / magnitude
    return density


def inject_noise(
    spectrum: MeasuredSpectrum | ScatteringSpectrum,
    sigma_r: float,
    sigma_t: float,
    rng: np.random.Generator,
) -> MeasuredSpectrum:
    """
    Add Gaussian intensity noise to a spectrum.

    Parameters
    ----------
    spectrum : MeasuredSpectrum or ScatteringSpectrum
        Noiseless spectrum.
    sigma_r, sigma_t : float
        Standard deviations of the reflectance and transmittance noise.
    rng : numpy.random.Generator
        Random generator.

    Returns
    -------
    MeasuredSpectrum
        Noisy spectrum clipped to [0, 1], with the uncertainties attached.
    """
    reflectance = np.asarray(spectrum.reflectance, dtype=float)
    transmittance = np.asarray(spectrum.transmittance, dtype=float)
    noisy_r = np.clip(reflectance + sigma_r * rng.standard_normal(reflectance.size), 0.0, 1.0)
    noisy_t = np.clip(transmittance + sigma_t * rng.standard_normal(transmittance.size), 0.0, 1.0)
    return MeasuredSpectrum(
        spectrum.grid,
        noisy_r,
        noisy_t,
        np.full(reflectance.size, float(sigma_r)),
        np.full(transmittance.size, float(sigma_t)),
    )


def monte_carlo_sigma(
    reflectance: ArrayLike,
    transmittance: ArrayLike,
    sigma_r: float,
    sigma_t: float,
    coupling: float,
    velocity: float,
    n_replicas: int = 10_000,
    seed: Optional[int] = None,
) -> np.ndarray:
    """
    Empirical standard deviation of the reconstructed J under Gaussian noise.

    Each replica draws from its own generator spawned from one seed sequence,
    so replicas are independent and the result is reproducible. Replicas are
    not clipped to [0, 1].

    Parameters
    ----------
    reflectance, transmittance : array_like
        Noiseless R and T.
    sigma_r, sigma_t : float
        Noise standard deviations.
    coupling : float
        Probe-waveguide coupling V.
    velocity : float
        Group velocity v.
    n_replicas : int, optional
        Number of perturbed spectra.
    seed : int, optional
        Root seed.

    Returns
    -------
    numpy.ndarray
        Standard deviation of J per point.
    """
    reflectance = np.asarray(reflectance, dtype=float)
    transmittance = np.asarray(transmittance, dtype=float)
    if n_replicas < 2:
        raise ValueError("Monte-Carlo estimate needs at least two replicas")

    prefactor = _prefactor(coupling, velocity)
    samples = np.empty((n_replicas, reflectance.size))
    for index, child in enumerate(np.random.SeedSequence(seed).spawn(n_replicas)):
        rng = np.random.default_rng(child)
        noisy_r = reflectance + sigma_r * rng.standard_normal(reflectance.size)
        noisy_t = transmittance + sigma_t * rng.standard_normal(transmittance.size)
        samples[index] = prefactor * (1.0 - noisy_r - noisy_t) / noisy_r
    LOGGER.debug("Monte-Carlo spread from %d replicas (seed %s)", n_replicas, seed)
    return samples.std(axis=0, ddof=1)

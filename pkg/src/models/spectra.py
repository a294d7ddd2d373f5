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
Frequency- and time-domain result models.

All arrays held by these models are copied on construction and made
read-only, so instances can be shared freely.
"""

import math
from dataclasses import dataclass
from enum import StrEnum
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike

from models.probe import FrequencyGrid, as_grid  # pylint: disable=import-error,no-name-in-module
from utils.errors import GridMismatch  # pylint: disable=import-error,no-name-in-module

# Rounding slack accepted on reflectance/transmittance bounds
UNIT_INTERVAL_SLACK = 1e-9


def _frozen(values: ArrayLike, dtype: type = float) -> np.ndarray:
    array = np.array(values, dtype=dtype).reshape(-1)
    array.setflags(write=False)
    return array


def _check_length(grid: FrequencyGrid, name: str, values: np.ndarray) -> None:
    if values.size != len(grid):
        raise GridMismatch(f"{name} has {values.size} values but the grid has {len(grid)} points")


class PointFlag(StrEnum):
    """Validity flag attached to each reconstructed point."""

    OK = "ok"
    LOW_REFLECTANCE = "low_reflectance"
    NONPHYSICAL_NEGATIVE = "nonphysical_negative"
    FLUX_VIOLATION = "flux_violation"


class Verdict(StrEnum):
    """Outcome of the Markovianity flatness test."""

    FLAT = "flat"
    STRUCTURED = "structured"


@dataclass(frozen=True)
class SelfEnergy:
    """
    Self-energy Sigma(omega) = P(omega) - i * pi * J(omega) sampled on a grid.

    Attributes
    ----------
    grid : FrequencyGrid
        Sample frequencies.
    principal : numpy.ndarray
        Principal-value part P(omega).
    density : numpy.ndarray
        Spectral density J(omega) at the grid points.
    """

    grid: FrequencyGrid
    principal: np.ndarray
    density: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "grid", as_grid(self.grid))
        object.__setattr__(self, "principal", _frozen(self.principal))
        object.__setattr__(self, "density", _frozen(self.density))
        _check_length(self.grid, "P", self.principal)
        _check_length(self.grid, "J", self.density)
        if np.any(self.density < 0):
            raise ValueError("Self-energy spectral density samples must be non-negative")

    @property
    def values(self) -> np.ndarray:
        """numpy.ndarray: Complex Sigma(omega)."""
        return self.principal - 1j * math.pi * self.density


@dataclass(frozen=True)
class EffectivePotential:
    """
    Complex point potential W = W_R - i * W_I seen by the waveguide photon.

    Divergent entries (isolated real poles of the emission amplitude) hold
    ``complex(inf, 0)``.

    Attributes
    ----------
    values : numpy.ndarray
        Complex W(omega).
    grid : FrequencyGrid, optional
        Sample frequencies, when known.
    """

    values: np.ndarray
    grid: Optional[FrequencyGrid] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _frozen(self.values, complex))
        if self.grid is not None:
            object.__setattr__(self, "grid", as_grid(self.grid))
            _check_length(self.grid, "W", self.values)

    @property
    def divergent(self) -> np.ndarray:
        """numpy.ndarray: Boolean mask of divergence markers."""
        return np.isinf(self.values.real)

    @property
    def real_part(self) -> np.ndarray:
        """numpy.ndarray: W_R."""
        return self.values.real

    @property
    def absorptive(self) -> np.ndarray:
        """numpy.ndarray: W_I = -Im W, zero at divergence markers."""
        return np.where(self.divergent, 0.0, -self.values.imag)


@dataclass(frozen=True)
class ScatteringSpectrum:
    """
    Single-photon reflection and transmission coefficients on a grid.

    Attributes
    ----------
    grid : FrequencyGrid
        Probe frequencies.
    r : numpy.ndarray
        Complex reflection coefficient.
    t : numpy.ndarray
        Complex transmission coefficient, t = 1 + r.
    absorbance : numpy.ndarray
        Absorbed fraction of the incoming flux.
    """

    grid: FrequencyGrid
    r: np.ndarray
    t: np.ndarray
    absorbance: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "grid", as_grid(self.grid))
        object.__setattr__(self, "r", _frozen(self.r, complex))
        object.__setattr__(self, "t", _frozen(self.t, complex))
        object.__setattr__(self, "absorbance", _frozen(self.absorbance))
        for name, values in (("r", self.r), ("t", self.t), ("A", self.absorbance)):
            _check_length(self.grid, name, values)

    @classmethod
    def from_reflection(cls, grid: FrequencyGrid, r: ArrayLike) -> "ScatteringSpectrum":
        """
        Build a spectrum from reflection coefficients alone.

        Parameters
        ----------
        grid : FrequencyGrid
            Probe frequencies.
        r : array_like
            Complex reflection coefficients.

        Returns
        -------
        ScatteringSpectrum
            Spectrum with t = 1 + r and A = 1 - R - T.
        """
        r = np.asarray(r, dtype=complex)
        t = 1.0 + r
        absorbance = 1.0 - np.abs(r) ** 2 - np.abs(t) ** 2
        return cls(grid, r, t, absorbance)

    @property
    def reflectance(self) -> np.ndarray:
        """numpy.ndarray: R = |r|**2."""
        return np.abs(self.r) ** 2

    @property
    def transmittance(self) -> np.ndarray:
        """numpy.ndarray: T = |t|**2."""
        return np.abs(self.t) ** 2


@dataclass(frozen=True)
class EmissionHistory:
    """
    Excited-state amplitude of the probe after preparation at t = 0.

    Attributes
    ----------
    times : numpy.ndarray
        Increasing non-negative times.
    amplitude : numpy.ndarray
        Complex amplitude epsilon(t).
    """

    times: np.ndarray
    amplitude: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "times", _frozen(self.times))
        object.__setattr__(self, "amplitude", _frozen(self.amplitude, complex))
        if self.times.size != self.amplitude.size:
            raise GridMismatch("Emission history times and amplitudes differ in length")
        if self.times.size and (self.times[0] < 0 or np.any(np.diff(self.times) <= 0)):
            raise ValueError("Emission history times must be non-negative and increasing")

    @property
    def population(self) -> np.ndarray:
        """numpy.ndarray: Excited-state population |epsilon(t)|**2."""
        return np.abs(self.amplitude) ** 2


@dataclass(frozen=True)
class MeasuredSpectrum:
    """
    Recorded reflectance and transmittance, optionally with uncertainties.

    Attributes
    ----------
    grid : FrequencyGrid
        Probe frequencies.
    reflectance : numpy.ndarray
        R values in [0, 1].
    transmittance : numpy.ndarray
        T values in [0, 1].
    sigma_r : numpy.ndarray, optional
        Standard deviation of R per point.
    sigma_t : numpy.ndarray, optional
        Standard deviation of T per point.
    """

    grid: FrequencyGrid
    reflectance: np.ndarray
    transmittance: np.ndarray
    sigma_r: Optional[np.ndarray] = None
    sigma_t: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "grid", as_grid(self.grid))
        object.__setattr__(self, "reflectance", _frozen(self.reflectance))
        object.__setattr__(self, "transmittance", _frozen(self.transmittance))
        _check_length(self.grid, "R", self.reflectance)
        _check_length(self.grid, "T", self.transmittance)

        for name, values in (("R", self.reflectance), ("T", self.transmittance)):
            if not np.all(np.isfinite(values)):
                raise ValueError(f"{name} contains non-finite values")
            if np.any(values < -UNIT_INTERVAL_SLACK) or np.any(values > 1.0 + UNIT_INTERVAL_SLACK):
                raise ValueError(f"{name} values must lie in [0, 1]")

        if (self.sigma_r is None) != (self.sigma_t is None):
            raise ValueError("sigma_R and sigma_T must be given together")
        if self.sigma_r is not None and self.sigma_t is not None:
            sigma_r = np.broadcast_to(np.asarray(self.sigma_r, dtype=float), self.reflectance.shape)
            sigma_t = np.broadcast_to(np.asarray(self.sigma_t, dtype=float), self.transmittance.shape)
            if np.any(sigma_r < 0) or np.any(sigma_t < 0) or not np.all(np.isfinite(sigma_r + sigma_t)):
                raise ValueError("Uncertainties must be finite and non-negative")
            object.__setattr__(self, "sigma_r", _frozen(sigma_r))
            object.__setattr__(self, "sigma_t", _frozen(sigma_t))

    @property
    def has_uncertainty(self) -> bool:
        """bool: True when per-point uncertainties are attached."""
        return self.sigma_r is not None

    @classmethod
    def from_spectrum(cls, spectrum: ScatteringSpectrum, sigma_r: Optional[ArrayLike] = None, sigma_t: Optional[ArrayLike] = None) -> "MeasuredSpectrum":
        """
        Take the intensities of a simulated spectrum as a measurement.

        Parameters
        ----------
        spectrum : ScatteringSpectrum
            Simulated spectrum.
        sigma_r, sigma_t : array_like, optional
            Uncertainties to attach.

        Returns
        -------
        MeasuredSpectrum
            Measured spectrum with R = |r|**2 and T = |t|**2.
        """
        return cls(
            spectrum.grid,
            spectrum.reflectance,
            spectrum.transmittance,
            None if sigma_r is None else np.asarray(sigma_r, dtype=float),
            None if sigma_t is None else np.asarray(sigma_t, dtype=float),
        )


@dataclass(frozen=True)
class ReconstructionResult:
    """
    Spectral density recovered from a measured spectrum.

    Attributes
    ----------
    grid : FrequencyGrid
        Probe frequencies.
    density : numpy.ndarray
        Reconstructed J, NaN at low-reflectance points, raw (possibly negative) elsewhere.
    flags : tuple[PointFlag, ...]
        Validity flag per point.
    sigma : numpy.ndarray, optional
        First-order uncertainty of J.
    """

    grid: FrequencyGrid
    density: np.ndarray
    flags: tuple[PointFlag, ...]
    sigma: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "grid", as_grid(self.grid))
        object.__setattr__(self, "density", _frozen(self.density))
        object.__setattr__(self, "flags", tuple(PointFlag(flag) for flag in self.flags))
        _check_length(self.grid, "J", self.density)
        if len(self.flags) != len(self.grid):
            raise GridMismatch(f"Got {len(self.flags)} flags for a grid of {len(self.grid)} points")
        if self.sigma is not None:
            object.__setattr__(self, "sigma", _frozen(self.sigma))
            _check_length(self.grid, "sigma_J", self.sigma)

        negative = np.array([flag is PointFlag.NONPHYSICAL_NEGATIVE for flag in self.flags])
        if np.any(negative & ~(self.density < 0)):
            raise ValueError("Points flagged nonphysical_negative must carry a negative J")

    @property
    def unflagged(self) -> np.ndarray:
        """numpy.ndarray: Boolean mask of points flagged ok."""
        return np.array([flag is PointFlag.OK for flag in self.flags], dtype=bool)

    def count(self, flag: PointFlag) -> int:
        """Number of points carrying ``flag``."""
        return sum(1 for item in self.flags if item is flag)

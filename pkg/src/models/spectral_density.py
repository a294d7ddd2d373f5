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
Spectral-density models.

A spectral density J(omega) = rho(omega) * mu(omega)**2 is the coupling strength
squared times the reservoir density of states. All families carry an explicit
finite support outside which J is exactly zero, so every quadrature domain is
finite. Frequencies are angular, hbar = 1.

Families
--------
flat
    J = j0 on the support.
lorentzian
    J = (g**2 / pi) * gamma / (gamma**2 + (omega - omega_1)**2), the damped
    Jaynes-Cummings reservoir. Default support omega_1 +/- 1e4 * gamma.
ohmic
    J = alpha * omega * exp(-omega / omega_c) for omega >= 0. Default support
    ends where the tail drops below 1e-12 of the peak.
band_gap
    J = c * sqrt(omega - omega_e) above the band edge omega_e, zero at and below
    it, with a hard cutoff omega_cut. The square-root edge is the conventional
    isotropic band-edge form; it is a modelling choice, not a derived result.
tabulated
    Linear interpolation of sampled (omega, J) pairs.
zero
    J = 0 everywhere.
"""

import math
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any, Callable, Optional

import numpy as np
from numpy.typing import ArrayLike
from scipy import integrate, special

# Default relative tail level used to truncate parametric families
TAIL_LEVEL = 1e-12
LORENTZIAN_SUPPORT_WIDTHS = 1e4


class SpectralDensityKind(StrEnum):
    """Supported spectral-density families."""

    FLAT = "flat"
    LORENTZIAN = "lorentzian"
    OHMIC = "ohmic"
    BAND_GAP = "band_gap"
    TABULATED = "tabulated"
    ZERO = "zero"


@dataclass(frozen=True)
class LorentzianParams:
    """
    Parameters of a Lorentzian spectral density.

    Attributes
    ----------
    g : float
        Coupling rate (the integral of J over the real line is g**2).
    gamma : float
        Half-width of the Lorentzian (dissipation rate of the pseudomode).
    omega_1 : float
        Centre frequency.
    """

    g: float
    gamma: float
    omega_1: float

    def __post_init__(self) -> None:
        if not self.g > 0:
            raise ValueError(f"Lorentzian coupling g must be positive, got {self.g}")
        if not self.gamma > 0:
            raise ValueError(f"Lorentzian width gamma must be positive, got {self.gamma}")


@dataclass(frozen=True)
class TabulatedSD:
    """
    Sampled spectral density with linear interpolation between nodes.

    Attributes
    ----------
    omega : numpy.ndarray
        Strictly increasing sample frequencies.
    values : numpy.ndarray
        Non-negative J samples, same length as ``omega``.
    """

    omega: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        omega = np.asarray(self.omega, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if omega.ndim != 1 or values.ndim != 1 or omega.size != values.size:
            raise ValueError("Tabulated omega and J arrays must be one-dimensional and of equal length")
        if omega.size < 2:
            raise ValueError("Tabulated spectral density needs at least two samples")
        if not np.all(np.isfinite(omega)) or not np.all(np.isfinite(values)):
            raise ValueError("Tabulated spectral density contains non-finite samples")
        if np.any(np.diff(omega) <= 0):
            raise ValueError("Tabulated omega samples must be strictly increasing")
        if np.any(values < 0):
            raise ValueError("Tabulated J samples must be non-negative")
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "values", values)

    def interpolate(self, omega: ArrayLike) -> np.ndarray:
        """
        Linearly interpolate the samples, zero outside the sampled range.

        Parameters
        ----------
        omega : array_like
            Frequencies to evaluate at.

        Returns
        -------
        numpy.ndarray
            Interpolated J values.
        """
        return np.interp(omega, self.omega, self.values, left=0.0, right=0.0)


def _flat_profile(params: dict[str, float], omega: Any) -> Any:
    return params["j0"] + 0.0 * omega


def _lorentzian_profile(params: dict[str, float], omega: Any) -> Any:
    g, gamma, omega_1 = params["g"], params["gamma"], params["omega_1"]
    return (g * g / math.pi) * gamma / (gamma * gamma + (omega - omega_1) ** 2)


def _ohmic_profile(params: dict[str, float], omega: Any) -> Any:
    return params["alpha"] * omega * np.exp(-omega / params["omega_c"])


def _band_gap_profile(params: dict[str, float], omega: Any) -> Any:
    return params["c"] * np.sqrt(np.maximum(omega - params["omega_e"], 0.0))


_PROFILES: dict[SpectralDensityKind, Callable[[dict[str, float], Any], Any]] = {
    SpectralDensityKind.FLAT: _flat_profile,
    SpectralDensityKind.LORENTZIAN: _lorentzian_profile,
    SpectralDensityKind.OHMIC: _ohmic_profile,
    SpectralDensityKind.BAND_GAP: _band_gap_profile,
}

_REQUIRED_PARAMS: dict[SpectralDensityKind, tuple[str, ...]] = {
    SpectralDensityKind.FLAT: ("j0",),
    SpectralDensityKind.LORENTZIAN: ("g", "gamma", "omega_1"),
    SpectralDensityKind.OHMIC: ("alpha", "omega_c"),
    SpectralDensityKind.BAND_GAP: ("c", "omega_e"),
    SpectralDensityKind.TABULATED: (),
    SpectralDensityKind.ZERO: (),
}


@dataclass(frozen=True)
class SpectralDensity:
    """
    A non-negative spectral density J(omega) on a closed frequency support.

    Instances are immutable and safe to share between threads. Build them with
    the family constructors (``flat``, ``lorentzian``, ``ohmic``, ``band_gap``,
    ``tabulated``, ``zero``) or from their JSON form with ``from_dict``.

    Attributes
    ----------
    kind : SpectralDensityKind
        The family.
    params : dict[str, float]
        Family parameters in angular-frequency units.
    support : tuple[float, float]
        Closed interval [omega_min, omega_max] outside which J is exactly zero.
    table : TabulatedSD, optional
        Samples for the tabulated family.
    """

    kind: SpectralDensityKind
    params: dict[str, float] = field(default_factory=dict)
    support: tuple[float, float] = (0.0, 0.0)
    table: Optional[TabulatedSD] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", SpectralDensityKind(self.kind))
        object.__setattr__(self, "params", {key: float(value) for key, value in self.params.items()})
        object.__setattr__(self, "support", (float(self.support[0]), float(self.support[1])))

        missing = [name for name in _REQUIRED_PARAMS[self.kind] if name not in self.params]
        if missing:
            raise ValueError(f"Spectral density '{self.kind}' is missing parameters: {', '.join(missing)}")

        low, high = self.support
        if not (math.isfinite(low) and math.isfinite(high)):
            raise ValueError("Spectral density support must be finite")
        if self.kind is not SpectralDensityKind.ZERO and not low < high:
            raise ValueError(f"Spectral density support must satisfy omega_min < omega_max, got {self.support}")

        if self.kind is SpectralDensityKind.TABULATED and self.table is None:
            raise ValueError("Tabulated spectral density requires sample arrays")

        # Family-specific parameter checks
        if self.kind is SpectralDensityKind.FLAT and self.params["j0"] < 0:
            raise ValueError("Flat spectral density j0 must be non-negative")
        if self.kind is SpectralDensityKind.LORENTZIAN:
            LorentzianParams(self.params["g"], self.params["gamma"], self.params["omega_1"])
        if self.kind is SpectralDensityKind.OHMIC:
            if self.params["alpha"] < 0 or not self.params["omega_c"] > 0:
                raise ValueError("Ohmic spectral density needs alpha >= 0 and omega_c > 0")
            if low < 0:
                raise ValueError("Ohmic spectral density support must lie at omega >= 0")
        if self.kind is SpectralDensityKind.BAND_GAP and self.params["c"] < 0:
            raise ValueError("Band-gap spectral density prefactor c must be non-negative")

    @classmethod
    def flat(cls, j0: float, support: tuple[float, float]) -> "SpectralDensity":
        """
        Create a flat (Markovian) spectral density.

        Parameters
        ----------
        j0 : float
            Constant value of J on the support.
        support : tuple[float, float]
            Band edges.

        Returns
        -------
        SpectralDensity
            Flat spectral density.
        """
        return cls(SpectralDensityKind.FLAT, {"j0": j0}, support)

    @classmethod
    def lorentzian(cls, g: float, gamma: float, omega_1: float, support: tuple[float, float] | None = None) -> "SpectralDensity":
        """
        Create a Lorentzian spectral density.

        Parameters
        ----------
        g : float
            Coupling rate.
        gamma : float
            Half-width.
        omega_1 : float
            Centre frequency.
        support : tuple[float, float], optional
            Truncation interval. Defaults to omega_1 +/- 1e4 * gamma.

        Returns
        -------
        SpectralDensity
            Lorentzian spectral density.
        """
        if support is None:
            half_width = LORENTZIAN_SUPPORT_WIDTHS * gamma
            support = (omega_1 - half_width, omega_1 + half_width)
        return cls(SpectralDensityKind.LORENTZIAN, {"g": g, "gamma": gamma, "omega_1": omega_1}, support)

    @classmethod
    def ohmic(cls, alpha: float, omega_c: float, support: tuple[float, float] | None = None) -> "SpectralDensity":
        """
        Create an Ohmic spectral density with exponential cutoff.

        Parameters
        ----------
        alpha : float
            Dimensionless coupling.
        omega_c : float
            Cutoff frequency.
        support : tuple[float, float], optional
            Truncation interval. Defaults to [0, x * omega_c] with
            x * exp(-x) = 1e-12 * exp(-1).

        Returns
        -------
        SpectralDensity
            Ohmic spectral density.
        """
        if support is None:
            support = (0.0, _ohmic_tail_point(TAIL_LEVEL, upper=True) * omega_c)
        return cls(SpectralDensityKind.OHMIC, {"alpha": alpha, "omega_c": omega_c}, support)

    @classmethod
    def band_gap(cls, c: float, omega_e: float, omega_cut: float) -> "SpectralDensity":
        """
        Create a band-edge spectral density J = c * sqrt(omega - omega_e).

        Parameters
        ----------
        c : float
            Prefactor.
        omega_e : float
            Band edge; J is zero for omega <= omega_e (the gap).
        omega_cut : float
            Hard upper cutoff.

        Returns
        -------
        SpectralDensity
            Band-gap spectral density on [omega_e, omega_cut].
        """
        return cls(SpectralDensityKind.BAND_GAP, {"c": c, "omega_e": omega_e}, (omega_e, omega_cut))

    @classmethod
    def tabulated(cls, omega: ArrayLike, values: ArrayLike) -> "SpectralDensity":
        """
        Create a spectral density from samples.

        Parameters
        ----------
        omega : array_like
            Strictly increasing sample frequencies.
        values : array_like
            Non-negative J samples.

        Returns
        -------
        SpectralDensity
            Tabulated spectral density supported on the sampled range.
        """
        table = TabulatedSD(np.asarray(omega, dtype=float), np.asarray(values, dtype=float))
        return cls(SpectralDensityKind.TABULATED, {}, (table.omega[0], table.omega[-1]), table)

    @classmethod
    def zero(cls) -> "SpectralDensity":
        """
        Create the identically vanishing spectral density.

        Returns
        -------
        SpectralDensity
            J = 0 everywhere.
        """
        return cls(SpectralDensityKind.ZERO)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SpectralDensity":
        """
        Create a parametric spectral density from its JSON form.

        Parameters
        ----------
        data : dict
            Mapping with keys ``kind``, ``params`` and optionally ``support``.

        Returns
        -------
        SpectralDensity
            Spectral density instance.

        Raises
        ------
        ValueError
            If the kind is unknown, tabulated, or the parameters are invalid.
        """
        try:
            kind = SpectralDensityKind(data["kind"])
        except (KeyError, ValueError) as ex:
            raise ValueError(f"Unknown spectral density kind: {data.get('kind')!r}") from ex
        params = dict(data.get("params", {}))
        support = data.get("support")
        if support is not None and len(support) != 2:
            raise ValueError("Spectral density support must be a two-element list")

        if kind is SpectralDensityKind.TABULATED:
            raise ValueError("Tabulated spectral densities are loaded from CSV, not built from JSON parameters")
        if kind is SpectralDensityKind.ZERO:
            return cls.zero()
        if kind is SpectralDensityKind.LORENTZIAN:
            return cls.lorentzian(params["g"], params["gamma"], params["omega_1"], tuple(support) if support else None)
        if kind is SpectralDensityKind.OHMIC:
            return cls.ohmic(params["alpha"], params["omega_c"], tuple(support) if support else None)
        if kind is SpectralDensityKind.BAND_GAP and support is None and "omega_cut" in params:
            return cls.band_gap(params["c"], params["omega_e"], params["omega_cut"])
        if support is None:
            raise ValueError(f"Spectral density '{kind}' requires an explicit support")
        params.pop("omega_cut", None)
        return cls(kind, params, (support[0], support[1]))

    def to_dict(self) -> dict[str, Any]:
        """
        Serialise a parametric spectral density to its JSON form.

        Returns
        -------
        dict
            Mapping with keys ``kind``, ``params`` and ``support``.

        Raises
        ------
        ValueError
            For tabulated spectral densities, which serialise as CSV.
        """
        if self.kind is SpectralDensityKind.TABULATED:
            raise ValueError("Tabulated spectral densities serialise as CSV")
        return {"kind": str(self.kind), "params": dict(self.params), "support": list(self.support)}

    @property
    def is_null(self) -> bool:
        """bool: True when J vanishes identically."""
        return self.kind is SpectralDensityKind.ZERO or self.peak_value == 0.0

    @property
    def peak_value(self) -> float:
        """float: Maximum of J over the support."""
        low, high = self.support
        if self.kind is SpectralDensityKind.ZERO:
            return 0.0
        if self.kind is SpectralDensityKind.FLAT:
            return self.params["j0"]
        if self.kind is SpectralDensityKind.TABULATED:
            assert self.table is not None
            return float(np.max(self.table.values))
        if self.kind is SpectralDensityKind.LORENTZIAN:
            return self.value(min(max(self.params["omega_1"], low), high))
        if self.kind is SpectralDensityKind.OHMIC:
            return self.value(min(max(self.params["omega_c"], low), high))
        # Band gap grows monotonically up to the cutoff
        return self.value(high)

    @property
    def features(self) -> tuple[float, ...]:
        """tuple[float, ...]: Interior points where J peaks, has a kink or an edge."""
        low, high = self.support
        if self.kind is SpectralDensityKind.LORENTZIAN:
            candidates: list[float] = [self.params["omega_1"]]
        elif self.kind is SpectralDensityKind.OHMIC:
            candidates = [self.params["omega_c"]]
        elif self.kind is SpectralDensityKind.BAND_GAP:
            candidates = [self.params["omega_e"]]
        elif self.kind is SpectralDensityKind.TABULATED:
            assert self.table is not None
            candidates = list(self.table.omega[1:-1])
        else:
            candidates = []
        return tuple(point for point in candidates if low < point < high)

    @property
    def width_scale(self) -> float:
        """float: Narrowest frequency scale on which J changes."""
        low, high = self.support
        if self.kind is SpectralDensityKind.LORENTZIAN:
            return self.params["gamma"]
        if self.kind is SpectralDensityKind.OHMIC:
            return self.params["omega_c"]
        if self.kind is SpectralDensityKind.TABULATED:
            assert self.table is not None
            return float(np.min(np.diff(self.table.omega)))
        return max(high - low, 0.0)

    @property
    def lorentzian_params(self) -> LorentzianParams:
        """
        LorentzianParams: Parameters of a Lorentzian spectral density.

        Raises
        ------
        ValueError
            For any other family.
        """
        if self.kind is not SpectralDensityKind.LORENTZIAN:
            raise ValueError(f"Spectral density '{self.kind}' is not Lorentzian")
        return LorentzianParams(self.params["g"], self.params["gamma"], self.params["omega_1"])

    def scalar(self) -> Callable[[float], float]:
        """
        Build a float-only evaluator of J for use inside adaptive quadrature.

        Returns
        -------
        Callable[[float], float]
            Function returning J(omega), zero outside the support.
        """
        low, high = self.support
        params = self.params
        if self.kind is SpectralDensityKind.ZERO:
            return lambda omega: 0.0
        if self.kind is SpectralDensityKind.FLAT:
            j0 = params["j0"]
            return lambda omega: j0 if low <= omega <= high else 0.0
        if self.kind is SpectralDensityKind.LORENTZIAN:
            weight = params["g"] ** 2 * params["gamma"] / math.pi
            gamma_sq = params["gamma"] ** 2
            omega_1 = params["omega_1"]
            return lambda omega: weight / (gamma_sq + (omega - omega_1) ** 2) if low <= omega <= high else 0.0
        if self.kind is SpectralDensityKind.OHMIC:
            alpha, omega_c = params["alpha"], params["omega_c"]
            return lambda omega: alpha * omega * math.exp(-omega / omega_c) if low <= omega <= high else 0.0
        if self.kind is SpectralDensityKind.BAND_GAP:
            c, omega_e = params["c"], params["omega_e"]
            return lambda omega: c * math.sqrt(omega - omega_e) if omega_e < omega <= high and omega >= low else 0.0
        return self.value

    def value(self, omega: float) -> float:
        """
        Evaluate J at a single frequency.

        Parameters
        ----------
        omega : float
            Angular frequency.

        Returns
        -------
        float
            J(omega), exactly 0 outside the support.
        """
        low, high = self.support
        if self.kind is SpectralDensityKind.ZERO or omega < low or omega > high:
            return 0.0
        if self.kind is SpectralDensityKind.TABULATED:
            assert self.table is not None
            return float(self.table.interpolate(omega))
        return float(_PROFILES[self.kind](self.params, omega))

    def evaluate(self, omega: ArrayLike) -> np.ndarray:
        """
        Evaluate J on an array of frequencies.

        Parameters
        ----------
        omega : array_like
            Angular frequencies.

        Returns
        -------
        numpy.ndarray
            J values, exactly 0 outside the support.
        """
        omega = np.asarray(omega, dtype=float)
        low, high = self.support
        inside = (omega >= low) & (omega <= high)
        if self.kind is SpectralDensityKind.ZERO:
            return np.zeros_like(omega)
        if self.kind is SpectralDensityKind.TABULATED:
            assert self.table is not None
            raw = self.table.interpolate(omega)
        else:
            raw = _PROFILES[self.kind](self.params, np.where(inside, omega, low))
        return np.where(inside, raw, 0.0)

    def integral(self, epsrel: float = 1e-10) -> float:
        """
        Integrate J over its support.

        Parameters
        ----------
        epsrel : float, optional
            Relative tolerance of the adaptive quadrature.

        Returns
        -------
        float
            The integral of J.
        """
        if self.is_null:
            return 0.0
        low, high = self.support
        points = self.features or None
        limit = max(200, 4 * len(self.features) + 50)
        result, _ = integrate.quad(self.value, low, high, points=points, epsabs=0.0, epsrel=epsrel, limit=limit)
        return float(result)

    def window(self, threshold: float) -> tuple[float, float]:
        """
        Sub-interval of the support where J stays above a fraction of its peak.

        Closed forms are used for the Lorentzian and Ohmic families; other
        families return the full support.

        Parameters
        ----------
        threshold : float
            Fraction of the peak value, in (0, 1).

        Returns
        -------
        tuple[float, float]
            The significant window.
        """
        low, high = self.support
        if self.kind is SpectralDensityKind.LORENTZIAN:
            half_width = self.params["gamma"] * math.sqrt(max(1.0 / threshold - 1.0, 0.0))
            centre = self.params["omega_1"]
            return max(low, centre - half_width), min(high, centre + half_width)
        if self.kind is SpectralDensityKind.OHMIC:
            omega_c = self.params["omega_c"]
            lower = _ohmic_tail_point(threshold, upper=False) * omega_c
            upper = _ohmic_tail_point(threshold, upper=True) * omega_c
            return max(low, lower), min(high, upper)
        return low, high


def _ohmic_tail_point(level: float, upper: bool) -> float:
    """
    Solve x * exp(-x) = level * exp(-1) on one side of the peak x = 1.

    Parameters
    ----------
    level : float
        Fraction of the peak value.
    upper : bool
        Solve on the x > 1 branch when True, on 0 < x < 1 otherwise.

    Returns
    -------
    float
        The dimensionless crossing point.
    """
    branch = -1 if upper else 0
    return float(-special.lambertw(-level * math.exp(-1.0), k=branch).real)


def eval_sd(sd: SpectralDensity, omega: float) -> float:
    """
    Evaluate a spectral density at one frequency.

    Parameters
    ----------
    sd : SpectralDensity
        The spectral density.
    omega : float
        Angular frequency.

    Returns
    -------
    float
        J(omega) >= 0.
    """
    return sd.value(omega)


def sd_integral(sd: SpectralDensity) -> float:
    """
    Integrate a spectral density over its support.

    Parameters
    ----------
    sd : SpectralDensity
        The spectral density.

    Returns
    -------
    float
        The integral of J.
    """
    return sd.integral()

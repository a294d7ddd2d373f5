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

"""Probe and frequency-grid models."""

from dataclasses import dataclass, replace
from typing import Any, Optional

import numpy as np
from numpy.typing import ArrayLike


@dataclass(frozen=True)
class FrequencyGrid:
    """
    A strictly increasing set of probe frequencies.

    Attributes
    ----------
    omega : numpy.ndarray
        Angular frequencies, at least two, strictly increasing.
    """

    omega: np.ndarray

    def __post_init__(self) -> None:
        omega = np.array(self.omega, dtype=float).reshape(-1)
        if omega.size < 2:
            raise ValueError("Frequency grid needs at least two points")
        if not np.all(np.isfinite(omega)):
            raise ValueError("Frequency grid contains non-finite values")
        if np.any(np.diff(omega) <= 0):
            raise ValueError("Frequency grid must be strictly increasing")
        omega.setflags(write=False)
        object.__setattr__(self, "omega", omega)

    def __len__(self) -> int:
        return int(self.omega.size)

    @classmethod
    def linspace(cls, minimum: float, maximum: float, count: int) -> "FrequencyGrid":
        """
        Create an evenly spaced grid, end points included.

        Parameters
        ----------
        minimum : float
            First frequency.
        maximum : float
            Last frequency.
        count : int
            Number of points, at least 2.

        Returns
        -------
        FrequencyGrid
            The grid.
        """
        if int(count) < 2:
            raise ValueError(f"Grid count must be at least 2, got {count}")
        return cls(np.linspace(float(minimum), float(maximum), int(count)))

    @classmethod
    def parse(cls, text: str) -> "FrequencyGrid":
        """
        Parse a ``min:max:count`` grid specification.

        Parameters
        ----------
        text : str
            Grid specification, for example ``-5:5:201``.

        Returns
        -------
        FrequencyGrid
            The grid.

        Raises
        ------
        ValueError
            If the text is not of the form ``min:max:count``.
        """
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"Grid must be given as min:max:count, got {text!r}")
        try:
            return cls.linspace(float(parts[0]), float(parts[1]), int(parts[2]))
        except ValueError as ex:
            raise ValueError(f"Invalid grid specification {text!r}: {ex}") from ex

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "FrequencyGrid":
        """
        Create a grid from its JSON form.

        Parameters
        ----------
        data : dict
            Either ``{"min", "max", "count"}`` or ``{"values": [...]}``.

        Returns
        -------
        FrequencyGrid
            The grid.
        """
        if "values" in data:
            return cls(np.asarray(data["values"], dtype=float))
        try:
            return cls.linspace(data["min"], data["max"], data["count"])
        except KeyError as ex:
            raise ValueError(f"Grid specification is missing key {ex}") from ex

    def to_dict(self) -> dict[str, Any]:
        """
        Serialise the grid as an explicit list of values.

        Returns
        -------
        dict
            ``{"values": [...]}``.
        """
        return {"values": [float(value) for value in self.omega]}

    def scaled(self, factor: float) -> "FrequencyGrid":
        """Return the grid with every frequency multiplied by ``factor``."""
        return FrequencyGrid(self.omega * factor)


def as_grid(grid: "FrequencyGrid | ArrayLike") -> FrequencyGrid:
    """
    Coerce an array or grid into a FrequencyGrid.

    Parameters
    ----------
    grid : FrequencyGrid or array_like
        Grid or raw frequencies.

    Returns
    -------
    FrequencyGrid
        The grid.
    """
    if isinstance(grid, FrequencyGrid):
        return grid
    return FrequencyGrid(np.asarray(grid, dtype=float))


@dataclass(frozen=True)
class ProbeConfig:
    """
    Parameters of the two-level probe and its waveguide.

    Attributes
    ----------
    omega_0 : float
        Probe transition frequency.
    coupling : float
        Probe-waveguide coupling amplitude V.
    velocity : float
        Group velocity of the waveguide photons.
    grid : FrequencyGrid, optional
        Probe frequencies at which spectra are computed. Reconstruction takes
        the grid from the measured spectrum instead.
    """

    omega_0: float
    coupling: float
    velocity: float
    grid: Optional[FrequencyGrid] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "omega_0", float(self.omega_0))
        object.__setattr__(self, "coupling", float(self.coupling))
        object.__setattr__(self, "velocity", float(self.velocity))
        if self.grid is not None:
            object.__setattr__(self, "grid", as_grid(self.grid))
        if not np.isfinite(self.omega_0):
            raise ValueError("Probe frequency omega_0 must be finite")
        if not self.coupling > 0:
            raise ValueError(f"Probe coupling V must be positive, got {self.coupling}")
        if not self.velocity > 0:
            raise ValueError(f"Group velocity must be positive, got {self.velocity}")

    @property
    def waveguide_rate(self) -> float:
        """float: Emission rate into the waveguide, V**2 / v."""
        return self.coupling**2 / self.velocity

    @classmethod
    def from_dict(cls, data: dict[str, Any], grid: Optional[FrequencyGrid] = None) -> "ProbeConfig":
        """
        Create a probe configuration from its JSON form.

        Parameters
        ----------
        data : dict
            Mapping with keys ``omega_0``, ``coupling`` and ``velocity``.
        grid : FrequencyGrid, optional
            Probe frequency grid.

        Returns
        -------
        ProbeConfig
            Probe configuration.
        """
        try:
            return cls(omega_0=data["omega_0"], coupling=data["coupling"], velocity=data["velocity"], grid=grid)
        except KeyError as ex:
            raise ValueError(f"Probe section is missing key {ex}") from ex

    def with_grid(self, grid: "FrequencyGrid | ArrayLike") -> "ProbeConfig":
        """Same probe on another frequency grid."""
        return replace(self, grid=as_grid(grid))

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

"""Parameter models of the two published scattering experiments."""

import math
from dataclasses import MISSING, dataclass, fields
from enum import StrEnum
from typing import Any


class ExperimentModel(StrEnum):
    """Closed-form experiment models."""

    TRANSMON = "transmon"
    CAVITY_CPB = "cavity_cpb"


class Regime(StrEnum):
    """Whether a run stays in the single-photon regime the reconstruction assumes."""

    SINGLE_PHOTON = "single_photon"
    EXTRAPOLATED = "extrapolated"


def _from_mapping(cls: Any, data: dict[str, Any]) -> Any:
    names = {item.name for item in fields(cls)}
    unknown = sorted(set(data) - names)
    if unknown:
        raise ValueError(f"Unknown {cls.__name__} parameters: {', '.join(unknown)}")
    missing = sorted(item.name for item in fields(cls) if item.name not in data and item.default is MISSING)
    if missing:
        raise ValueError(f"Missing {cls.__name__} parameters: {', '.join(missing)}")
    return cls(**{key: float(value) for key, value in data.items()})


@dataclass(frozen=True)
class TransmonModelParams:
    """
    A transmon side-coupled to an open transmission line, weakly driven.

    Attributes
    ----------
    omega_0 : float
        Transition frequency.
    gamma_eg : float
        Relaxation rate into the line, must be positive.
    gamma_l : float
        Intrinsic loss rate.
    gamma_phi : float
        Pure dephasing rate.
    rabi : float
        Rabi frequency of the drive.
    """

    omega_0: float
    gamma_eg: float
    gamma_l: float = 0.0
    gamma_phi: float = 0.0
    rabi: float = 0.0

    def __post_init__(self) -> None:
        if not self.gamma_eg > 0:
            raise ValueError(f"Transmon relaxation rate gamma_eg must be positive, got {self.gamma_eg}")
        for name in ("gamma_l", "gamma_phi", "rabi"):
            if getattr(self, name) < 0:
                raise ValueError(f"Transmon {name} must be non-negative")

    @property
    def gamma(self) -> float:
        """float: Decoherence rate gamma_eg / 2 + gamma_phi + gamma_l / 2."""
        return self.gamma_eg / 2.0 + self.gamma_phi + self.gamma_l / 2.0

    @property
    def regime(self) -> Regime:
        """Regime: ``extrapolated`` for any non-zero drive."""
        return Regime.EXTRAPOLATED if self.rabi > 0 else Regime.SINGLE_PHOTON

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "TransmonModelParams":
        """
        Create transmon parameters from their JSON form.

        Parameters
        ----------
        data : dict
            Mapping of field names to values.

        Returns
        -------
        TransmonModelParams
            Parameters instance.
        """
        return _from_mapping(cls, data)

    def in_megahertz(self) -> "TransmonModelParams":
        """
        Read every rate as nu in MHz and convert to angular units.

        Returns
        -------
        TransmonModelParams
            Parameters multiplied by 2 * pi.
        """
        two_pi = 2.0 * math.pi
        return TransmonModelParams(
            omega_0=self.omega_0 * two_pi,
            gamma_eg=self.gamma_eg * two_pi,
            gamma_l=self.gamma_l * two_pi,
            gamma_phi=self.gamma_phi * two_pi,
            rabi=self.rabi * two_pi,
        )


@dataclass(frozen=True)
class CavityCpbModelParams:
    """
    A waveguide-probed cavity coupled to a lossy Cooper-pair box.

    Attributes
    ----------
    omega_0 : float
        Cavity frequency (plays the probe role).
    omega_1 : float
        Cooper-pair box frequency.
    gamma_1 : float
        Cooper-pair box dissipation rate.
    g : float
        Cavity-box coupling.
    coupling : float
        Cavity-waveguide coupling amplitude V.
    velocity : float
        Waveguide group velocity.
    """

    omega_0: float
    omega_1: float
    gamma_1: float
    g: float
    coupling: float = 1.0
    velocity: float = 1.0

    def __post_init__(self) -> None:
        if not self.gamma_1 > 0:
            raise ValueError(f"Cooper-pair box dissipation gamma_1 must be positive, got {self.gamma_1}")
        if self.g < 0:
            raise ValueError("Cavity-box coupling g must be non-negative")
        if not self.coupling > 0 or not self.velocity > 0:
            raise ValueError("Waveguide coupling and velocity must be positive")

    @property
    def waveguide_rate(self) -> float:
        """float: V**2 / v."""
        return self.coupling**2 / self.velocity

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "CavityCpbModelParams":
        """
        Create cavity and box parameters from their JSON form.

        Parameters
        ----------
        data : dict
            Mapping of field names to values.

        Returns
        -------
        CavityCpbModelParams
            Parameters instance.
        """
        return _from_mapping(cls, data)

    def in_megahertz(self) -> "CavityCpbModelParams":
        """
        Read every frequency as nu in MHz and convert to angular units.

        Returns
        -------
        CavityCpbModelParams
            Parameters with omega = 2 * pi * nu and V scaled by sqrt(2 * pi).
        """
        two_pi = 2.0 * math.pi
        return CavityCpbModelParams(
            omega_0=self.omega_0 * two_pi,
            omega_1=self.omega_1 * two_pi,
            gamma_1=self.gamma_1 * two_pi,
            g=self.g * two_pi,
            coupling=self.coupling * math.sqrt(two_pi),
            velocity=self.velocity,
        )

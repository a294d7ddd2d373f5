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
Run configuration for the command-line front end.

A run is described by a JSON document, for example::

    {
        "probe": {"omega_0": 0.0, "coupling": 1.0, "velocity": 1.0},
        "grid": {"min": -5.0, "max": 5.0, "count": 201},
        "sd": {"kind": "flat", "params": {"j0": 0.1}, "support": [-50, 50]},
        "noise": {"sigma_r": 0.01, "sigma_t": 0.01, "seed": 7},
        "output": "out/flat"
    }

Command-line flags (``--grid``, ``--seed``, ``--noise``, ``--out``) are
applied on top with ``RunConfig.with_overrides``.
"""

import math
from dataclasses import dataclass, field, replace
from enum import StrEnum
from typing import Any, Optional

from models.experiment import CavityCpbModelParams, ExperimentModel, TransmonModelParams  # pylint: disable=import-error,no-name-in-module
from models.probe import FrequencyGrid, ProbeConfig  # pylint: disable=import-error,no-name-in-module
from models.spectral_density import SpectralDensity, SpectralDensityKind  # pylint: disable=import-error,no-name-in-module
from utils.errors import ConfigError  # pylint: disable=import-error,no-name-in-module

TWO_PI = 2.0 * math.pi

# Spectral-density parameters that carry frequency units
_FREQUENCY_PARAMS = {"j0", "g", "gamma", "omega_1", "omega_c", "omega_e", "omega_cut"}


class Units(StrEnum):
    """Unit convention of the numbers in a run configuration."""

    NATURAL = "natural"
    MHZ = "mhz"


@dataclass(frozen=True)
class NoiseSpec:
    """
    Gaussian measurement noise added to simulated spectra.

    Attributes
    ----------
    sigma_r : float
        Standard deviation of the reflectance noise.
    sigma_t : float
        Standard deviation of the transmittance noise.
    seed : int, optional
        Random seed. A fresh seed is drawn and logged when missing.
    """

    sigma_r: float
    sigma_t: float
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        if self.sigma_r < 0 or self.sigma_t < 0:
            raise ValueError("Noise standard deviations must be non-negative")
        if self.seed is not None and self.seed < 0:
            raise ValueError("Seed must be a non-negative integer")

    @classmethod
    def parse(cls, text: str, seed: Optional[int] = None) -> "NoiseSpec":
        """
        Parse a ``sigmaR,sigmaT`` flag value.

        Parameters
        ----------
        text : str
            Two comma-separated standard deviations.
        seed : int, optional
            Seed to attach.

        Returns
        -------
        NoiseSpec
            Noise specification.
        """
        parts = text.split(",")
        if len(parts) != 2:
            raise ValueError(f"Noise must be given as sigmaR,sigmaT, got {text!r}")
        return cls(float(parts[0]), float(parts[1]), seed)


@dataclass(frozen=True)
class ReconstructionSettings:
    """Thresholds of the inversion and the flatness verdict."""

    r_floor: float = 1e-6
    rel_tol: float = 1e-2

    def __post_init__(self) -> None:
        if not self.r_floor > 0:
            raise ValueError("Reflectance floor r_floor must be positive")
        if not self.rel_tol >= 0:
            raise ValueError("Flatness tolerance rel_tol must be non-negative")


@dataclass(frozen=True)
class DynamicsSettings:
    """
    Time-domain settings for the decay and oracle commands.

    Attributes
    ----------
    t_max : float, optional
        Final time. Defaults to three FGR lifetimes when missing.
    n_t : int
        Number of output times.
    n_modes : int
        Modes of the discrete-bath oracle.
    n_modes_sweep : tuple[int, ...]
        Mode counts of the oracle convergence sweep.
    """

    t_max: Optional[float] = None
    n_t: int = 201
    n_modes: int = 2000
    n_modes_sweep: tuple[int, ...] = (500, 1000, 2000, 4000)

    def __post_init__(self) -> None:
        if self.t_max is not None and not self.t_max > 0:
            raise ValueError("t_max must be positive")
        if self.n_t < 2:
            raise ValueError("n_t must be at least 2")
        if self.n_modes < 2 or any(count < 2 for count in self.n_modes_sweep):
            raise ValueError("Oracle mode counts must be at least 2")


@dataclass(frozen=True)
class ExperimentSpec:
    """Closed-form experiment model and its parameters."""

    model: ExperimentModel
    params: TransmonModelParams | CavityCpbModelParams


@dataclass(frozen=True)
class RunConfig:  # pylint: disable=too-many-instance-attributes
    """
    Everything a subcommand needs to run.

    Attributes
    ----------
    probe : ProbeConfig, optional
        Probe parameters including the frequency grid.
    grid : FrequencyGrid, optional
        Frequency grid (also held by ``probe``).
    sd : SpectralDensity, optional
        Parametric spectral density.
    sd_path : str, optional
        CSV file of a tabulated spectral density.
    spectrum_path : str, optional
        Input spectrum CSV for reconstruction.
    noise : NoiseSpec, optional
        Measurement noise for simulated spectra.
    seed : int, optional
        Seed of every random draw of the run.
    units : Units
        Unit convention the file was written in.
    reconstruction : ReconstructionSettings
        Inversion thresholds.
    dynamics : DynamicsSettings
        Time-domain settings.
    experiment : ExperimentSpec, optional
        Closed-form experiment model.
    output : str
        Output directory.
    """

    probe: Optional[ProbeConfig] = None
    grid: Optional[FrequencyGrid] = None
    sd: Optional[SpectralDensity] = None
    sd_path: Optional[str] = None
    spectrum_path: Optional[str] = None
    noise: Optional[NoiseSpec] = None
    seed: Optional[int] = None
    units: Units = Units.NATURAL
    reconstruction: ReconstructionSettings = field(default_factory=ReconstructionSettings)
    dynamics: DynamicsSettings = field(default_factory=DynamicsSettings)
    experiment: Optional[ExperimentSpec] = None
    output: str = "out"

    def __post_init__(self) -> None:
        sources = [item for item in (self.sd, self.sd_path, self.spectrum_path) if item is not None]
        if len(sources) > 1:
            raise ValueError("Give exactly one of a spectral density or an input spectrum")

    @classmethod
    def from_dict(cls, data: dict[str, Any], default_output: str = "out") -> "RunConfig":
        """
        Create a run configuration from its JSON form.

        Parameters
        ----------
        data : dict
            Parsed JSON document.
        default_output : str, optional
            Output directory used when the document has none.

        Returns
        -------
        RunConfig
            Run configuration in internal angular units.

        Raises
        ------
        ValueError
            If a section is malformed or sections contradict each other.
        """
        if not isinstance(data, dict):
            raise ValueError("Run configuration must be a JSON object")
        known = {"probe", "grid", "sd", "spectrum", "noise", "seed", "units", "reconstruction", "dynamics", "experiment", "output"}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"Unknown configuration sections: {', '.join(unknown)}")

        units = Units(data.get("units", Units.NATURAL))
        scale = TWO_PI if units is Units.MHZ else 1.0

        # Check if a grid was given
        grid = FrequencyGrid.from_dict(data["grid"]).scaled(scale) if "grid" in data else None

        probe = None
        if "probe" in data:
            probe_data = dict(data["probe"])
            if units is Units.MHZ:
                probe_data["omega_0"] = float(probe_data["omega_0"]) * TWO_PI
                probe_data["coupling"] = float(probe_data["coupling"]) * math.sqrt(TWO_PI)
            probe = ProbeConfig.from_dict(probe_data, grid)

        sd = None
        sd_path = None
        if "sd" in data:
            sd_data = dict(data["sd"])
            if sd_data.get("kind") == SpectralDensityKind.TABULATED:
                if "path" not in sd_data:
                    raise ValueError("A tabulated spectral density needs a path")
                sd_path = str(sd_data["path"])
            else:
                sd = SpectralDensity.from_dict(_scale_sd(sd_data, units))

        noise_data = data.get("noise")
        noise = None
        seed = data.get("seed")
        if noise_data is not None:
            noise = NoiseSpec(float(noise_data["sigma_r"]), float(noise_data["sigma_t"]), noise_data.get("seed"))
            seed = noise.seed if noise.seed is not None else seed
        if seed is not None:
            seed = int(seed)

        experiment = None
        if "experiment" in data:
            experiment = _parse_experiment(data["experiment"], units)

        dynamics_data = dict(data.get("dynamics", {}))
        if "n_modes_sweep" in dynamics_data:
            dynamics_data["n_modes_sweep"] = tuple(int(count) for count in dynamics_data["n_modes_sweep"])

        return cls(
            probe=probe,
            grid=grid,
            sd=sd,
            sd_path=sd_path,
            spectrum_path=data.get("spectrum"),
            noise=noise,
            seed=seed,
            units=units,
            reconstruction=ReconstructionSettings(**data.get("reconstruction", {})),
            dynamics=DynamicsSettings(**dynamics_data),
            experiment=experiment,
            output=str(data.get("output", default_output)),
        )

    def with_overrides(
        self,
        grid: Optional[str] = None,
        seed: Optional[int] = None,
        noise: Optional[str] = None,
        output: Optional[str] = None,
    ) -> "RunConfig":
        """
        Apply command-line flag overrides.

        Parameters
        ----------
        grid : str, optional
            ``min:max:count`` grid, in the configuration's units.
        seed : int, optional
            Seed for all random draws.
        noise : str, optional
            ``sigmaR,sigmaT`` noise levels.
        output : str, optional
            Output directory.

        Returns
        -------
        RunConfig
            Updated configuration.
        """
        updated = self
        if grid is not None:
            scale = TWO_PI if self.units is Units.MHZ else 1.0
            new_grid = FrequencyGrid.parse(grid).scaled(scale)
            new_probe = replace(self.probe, grid=new_grid) if self.probe is not None else None
            updated = replace(updated, grid=new_grid, probe=new_probe)
        if seed is not None:
            updated = replace(updated, seed=seed)
        if noise is not None:
            updated = replace(updated, noise=NoiseSpec.parse(noise, updated.seed))
        if updated.noise is not None and updated.seed is not None and updated.noise.seed != updated.seed:
            updated = replace(updated, noise=replace(updated.noise, seed=updated.seed))
        if output is not None:
            updated = replace(updated, output=output)
        return updated

    def require_probe(self, need_grid: bool = True) -> ProbeConfig:
        """
        Return the probe configuration or fail.

        Parameters
        ----------
        need_grid : bool, optional
            Also require a frequency grid.

        Returns
        -------
        ProbeConfig
            Probe configuration.

        Raises
        ------
        ConfigError
            If the probe section, or the grid when needed, is missing.
        """
        if self.probe is None:
            raise ConfigError("This command needs a 'probe' section")
        if need_grid and self.probe.grid is None:
            raise ConfigError("This command needs a 'grid' section or --grid")
        return self.probe

    def require_grid(self) -> FrequencyGrid:
        """Return the frequency grid or raise ConfigError."""
        if self.grid is None:
            raise ConfigError("This command needs a 'grid' section or --grid")
        return self.grid

    def require_spectrum_path(self) -> str:
        """Return the input spectrum path or raise ConfigError."""
        if self.spectrum_path is None:
            raise ConfigError("This command needs a 'spectrum' path")
        return self.spectrum_path

    def require_experiment(self) -> ExperimentSpec:
        """Return the experiment section or raise ConfigError."""
        if self.experiment is None:
            raise ConfigError("This command needs an 'experiment' section")
        return self.experiment


def _scale_sd(data: dict[str, Any], units: Units) -> dict[str, Any]:
    if units is Units.NATURAL:
        return data
    scaled = dict(data)
    params = {}
    for key, value in dict(data.get("params", {})).items():
        if key in _FREQUENCY_PARAMS:
            params[key] = float(value) * TWO_PI
        elif key == "c":
            params[key] = float(value) * math.sqrt(TWO_PI)
        else:
            params[key] = value
    scaled["params"] = params
    if data.get("support") is not None:
        scaled["support"] = [float(value) * TWO_PI for value in data["support"]]
    return scaled


def _parse_experiment(data: dict[str, Any], units: Units) -> ExperimentSpec:
    try:
        model = ExperimentModel(data["model"])
    except (KeyError, ValueError) as ex:
        raise ValueError(f"Unknown experiment model: {data.get('model')!r}") from ex
    params_data = dict(data.get("params", {}))
    if model is ExperimentModel.TRANSMON:
        transmon = TransmonModelParams.from_dict(params_data)
        return ExperimentSpec(model, transmon.in_megahertz() if units is Units.MHZ else transmon)
    cavity = CavityCpbModelParams.from_dict(params_data)
    return ExperimentSpec(model, cavity.in_megahertz() if units is Units.MHZ else cavity)

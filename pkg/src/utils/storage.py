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
Result storage for the spectral-density probe.

This module provides a store that writes spectra, emission histories,
reconstructions and summaries as CSV/JSON files in an output directory,
and readers for the input formats.
"""

import csv
import json
import logging
import math
import os
import re
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from models.probe import FrequencyGrid  # pylint: disable=import-error,no-name-in-module
from models.spectra import EmissionHistory, MeasuredSpectrum, ReconstructionResult, ScatteringSpectrum  # pylint: disable=import-error,no-name-in-module
from models.spectral_density import SpectralDensity, SpectralDensityKind  # pylint: disable=import-error,no-name-in-module
from utils.errors import SpectrumFileError  # pylint: disable=import-error,no-name-in-module

SPECTRUM_HEADER = ("omega", "re_r", "im_r", "re_t", "im_t", "R", "T", "A")
HISTORY_HEADER = ("t", "re_eps", "im_eps", "abs2")
TABULATED_SD_HEADER = ("omega", "J")


def format_float(value: float) -> str:
    """
    Format a float with full double precision, independent of the locale.

    Parameters
    ----------
    value : float
        Number to format.

    Returns
    -------
    str
        Shortest string that reads back to the same double.
    """
    return repr(float(value))


class ResultStore:
    """
    Output directory manager for result files.

    All writers produce byte-identical files for identical inputs: floats
    are written with ``repr`` and JSON with sorted keys.
    """

    def __init__(self, output_dir: str | None = None, logger: logging.Logger | None = None) -> None:
        """
        Initialise the store.

        Args:
            output_dir: Directory for result files. If None, uses the
                        SDPROBE_OUT environment variable, then 'out'.
            logger: Logger instance for logging writes. If None, uses
                    the 'sdprobe.storage' logger.
        """
        self.logger = logger or logging.getLogger("sdprobe.storage")
        self.output_dir = Path(output_dir or os.getenv("SDPROBE_OUT", "out"))
        self.output_dir.mkdir(parents=True, exist_ok=True)
        self.logger.debug("Result store initialised at: %s", self.output_dir)

    @staticmethod
    def _validate_name(name: str) -> str:
        """
        Validate a result file name.

        Args:
            name: File name relative to the output directory.

        Returns:
            The validated name.

        Raises:
            ValueError: If the name is empty, too long or could leave the output directory.
        """
        if not name:
            raise ValueError("Invalid file name: name cannot be empty")
        if not re.match(r"^[A-Za-z0-9_][A-Za-z0-9_.-]*$", name) or ".." in name:
            raise ValueError(f"Invalid file name '{name}': must contain only alphanumeric characters, underscores, dots and dashes")
        if len(name) > 128:
            raise ValueError("Invalid file name: name too long (max 128 characters)")
        return name

    def path(self, name: str) -> Path:
        """Full path of a result file."""
        return self.output_dir / self._validate_name(name)

    def write_table(self, name: str, header: Sequence[str], columns: Iterable[Sequence[Any]]) -> Path:
        """
        Write equally long columns as a CSV file.

        Parameters
        ----------
        name : str
            File name.
        header : Sequence[str]
            Column names.
        columns : Iterable[Sequence[Any]]
            Column values; floats are written with full precision, anything
            else with ``str``.

        Returns
        -------
        pathlib.Path
            Path of the written file.
        """
        columns = [list(column) for column in columns]
        if len(columns) != len(header) or len({len(column) for column in columns}) > 1:
            raise ValueError("Table columns must match the header and have equal lengths")

        target = self.path(name)
        with open(target, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(header)
            for row in zip(*columns):
                writer.writerow([format_float(item) if isinstance(item, (float, np.floating)) else str(item) for item in row])
        self.logger.debug("Wrote %s (%d rows)", target, len(columns[0]) if columns else 0)
        return target

    def write_spectrum(self, name: str, spectrum: ScatteringSpectrum) -> Path:
        """
        Write a scattering spectrum as ``omega,re_r,im_r,re_t,im_t,R,T,A``.

        Parameters
        ----------
        name : str
            File name.
        spectrum : ScatteringSpectrum
            Spectrum to write.

        Returns
        -------
        pathlib.Path
            Path of the written file.
        """
        columns = [
            spectrum.grid.omega,
            spectrum.r.real,
            spectrum.r.imag,
            spectrum.t.real,
            spectrum.t.imag,
            spectrum.reflectance,
            spectrum.transmittance,
            spectrum.absorbance,
        ]
        return self.write_table(name, SPECTRUM_HEADER, ([float(value) for value in column] for column in columns))

    def write_measured(self, name: str, spectrum: MeasuredSpectrum) -> Path:
        """
        Write a measured spectrum as ``omega,R,T[,sigma_R,sigma_T]``.

        Parameters
        ----------
        name : str
            File name.
        spectrum : MeasuredSpectrum
            Spectrum to write.

        Returns
        -------
        pathlib.Path
            Path of the written file.
        """
        header = ["omega", "R", "T"]
        columns = [spectrum.grid.omega, spectrum.reflectance, spectrum.transmittance]
        if spectrum.sigma_r is not None and spectrum.sigma_t is not None:
            header += ["sigma_R", "sigma_T"]
            columns += [spectrum.sigma_r, spectrum.sigma_t]
        return self.write_table(name, header, ([float(value) for value in column] for column in columns))

    def write_history(self, name: str, history: EmissionHistory) -> Path:
        """
        Write an emission history as ``t,re_eps,im_eps,abs2``.

        Parameters
        ----------
        name : str
            File name.
        history : EmissionHistory
            History to write.

        Returns
        -------
        pathlib.Path
            Path of the written file.
        """
        columns = [history.times, history.amplitude.real, history.amplitude.imag, history.population]
        return self.write_table(name, HISTORY_HEADER, ([float(value) for value in column] for column in columns))

    def write_reconstruction(self, name: str, result: ReconstructionResult) -> Path:
        """
        Write a reconstruction as ``omega,J,flag[,sigma_J]``.

        Parameters
        ----------
        name : str
            File name.
        result : ReconstructionResult
            Reconstruction to write.

        Returns
        -------
        pathlib.Path
            Path of the written file.
        """
        header = ["omega", "J", "flag"]
        columns: list[list[Any]] = [
            [float(value) for value in result.grid.omega],
            [float(value) for value in result.density],
            [str(flag) for flag in result.flags],
        ]
        if result.sigma is not None:
            header.append("sigma_J")
            columns.append([float(value) for value in result.sigma])
        return self.write_table(name, header, columns)

    def write_json(self, name: str, payload: dict[str, Any]) -> Path:
        """
        Write a JSON document with sorted keys and two-space indentation.

        Parameters
        ----------
        name : str
            File name.
        payload : dict
            JSON-serialisable mapping.

        Returns
        -------
        pathlib.Path
            Path of the written file.
        """
        target = self.path(name)
        with open(target, "w", encoding="utf-8", newline="") as handle:
            json.dump(payload, handle, sort_keys=True, indent=2, allow_nan=True)
            handle.write("\n")
        self.logger.debug("Wrote %s", target)
        return target

    def write_sd(self, name: str, sd: SpectralDensity) -> Path:
        """
        Write a spectral density: CSV ``omega,J`` when tabulated, JSON otherwise.

        Parameters
        ----------
        name : str
            File name.
        sd : SpectralDensity
            Spectral density.

        Returns
        -------
        pathlib.Path
            Path of the written file.
        """
        if sd.kind is SpectralDensityKind.TABULATED:
            assert sd.table is not None
            return self.write_table(name, TABULATED_SD_HEADER, [[float(v) for v in sd.table.omega], [float(v) for v in sd.table.values]])
        return self.write_json(name, sd.to_dict())

    @staticmethod
    def _read_columns(path: str | Path, required: Sequence[str]) -> dict[str, np.ndarray]:
        """
        Read the named numeric columns of a CSV file.

        Args:
            path: CSV file with a one-line header.
            required: Columns that must be present.

        Returns:
            Mapping of every header column that parses as numbers.

        Raises:
            SpectrumFileError: If the file is unreadable, misses columns or holds non-numeric values.
        """
        try:
            with open(path, "r", encoding="utf-8", newline="") as handle:
                reader = csv.DictReader(handle)
                header = [name.strip() for name in (reader.fieldnames or [])]
                rows = list(reader)
        except (OSError, UnicodeDecodeError, csv.Error) as ex:
            raise SpectrumFileError(f"Cannot read {path}: {ex}") from ex

        missing = [name for name in required if name not in header]
        if missing:
            raise SpectrumFileError(f"{path} is missing columns: {', '.join(missing)}")
        if len(rows) < 2:
            raise SpectrumFileError(f"{path} holds fewer than two data rows")

        columns: dict[str, np.ndarray] = {}
        for name in header:
            try:
                values = np.array([float(row[name]) for row in rows])
            except (TypeError, ValueError) as ex:
                if name in required or name.startswith("sigma_"):
                    raise SpectrumFileError(f"{path}: column '{name}' holds a non-numeric value") from ex
                continue
            columns[name] = values

        for name in required:
            if not np.all(np.isfinite(columns[name])):
                raise SpectrumFileError(f"{path}: column '{name}' holds non-finite values")
        return columns

    @staticmethod
    def read_measured_spectrum(path: str | Path) -> MeasuredSpectrum:
        """
        Read a spectrum CSV with columns ``omega,R,T[,sigma_R,sigma_T]``.

        Extra columns are ignored, so forward spectra can be read directly.

        Parameters
        ----------
        path : str or pathlib.Path
            CSV file.

        Returns
        -------
        MeasuredSpectrum
            The spectrum.

        Raises
        ------
        SpectrumFileError
            If the file is malformed.
        """
        columns = ResultStore._read_columns(path, ("omega", "R", "T"))
        sigma_r = columns.get("sigma_R")
        sigma_t = columns.get("sigma_T")
        try:
            grid = FrequencyGrid(columns["omega"])
            return MeasuredSpectrum(grid, columns["R"], columns["T"], sigma_r, sigma_t)
        except ValueError as ex:
            raise SpectrumFileError(f"{path}: {ex}") from ex

    @staticmethod
    def read_tabulated_sd(path: str | Path) -> SpectralDensity:
        """
        Read a tabulated spectral density from a CSV with columns ``omega,J``.

        Parameters
        ----------
        path : str or pathlib.Path
            CSV file.

        Returns
        -------
        SpectralDensity
            Tabulated spectral density.

        Raises
        ------
        SpectrumFileError
            If the file is malformed or J is negative.
        """
        columns = ResultStore._read_columns(path, TABULATED_SD_HEADER)
        try:
            return SpectralDensity.tabulated(columns["omega"], columns["J"])
        except ValueError as ex:
            raise SpectrumFileError(f"{path}: {ex}") from ex

    @staticmethod
    def read_json(path: str | Path) -> dict[str, Any]:
        """
        Read a JSON document.

        Args:
            path: JSON file.

        Returns:
            The parsed mapping.

        Raises:
            OSError: If the file cannot be opened.
            ValueError: If the content is not valid JSON.
        """
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)


def finite_or_none(value: float) -> float | None:
    """Map NaN and infinities to None for JSON output."""
    return value if math.isfinite(value) else None

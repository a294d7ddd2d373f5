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
Exception hierarchy for the spectral-density probe toolkit.

Every error carries the process exit code the command-line front end
returns when the error escapes a command.
"""


class SdProbeError(Exception):
    """Base class for all toolkit errors."""

    exit_code: int = 1


class ConfigError(SdProbeError):
    """Run configuration could not be parsed or is contradictory."""

    exit_code = 2


class QuadratureFailure(SdProbeError):
    """Adaptive quadrature did not converge to the requested tolerance."""

    exit_code = 3


class WindowTooNarrow(SdProbeError):
    """The frequency window of the emission-spectrum integral cuts off spectral weight."""

    exit_code = 3


class StepperFailure(SdProbeError):
    """The ODE stepper failed or broke norm conservation."""

    exit_code = 3


class SpectrumFileError(SdProbeError):
    """A spectrum or spectral-density file is unreadable or malformed."""

    exit_code = 4


class GridMismatch(SdProbeError):
    """Arrays that must share a frequency grid have different lengths."""

    exit_code = 4


class InsufficientData(SdProbeError):
    """Too few usable points to decide the flatness verdict."""

    exit_code = 4


class MissingUncertainty(SdProbeError):
    """Noise propagation was requested for a spectrum without uncertainties."""

    exit_code = 4

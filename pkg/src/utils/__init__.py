"""Utility modules for the spectral-density probe."""

from . import errors
from . import logging
from .errors import SdProbeError as SdProbeError  # Explicit re-export for type checkers # pylint: disable=useless-import-alias

__all__ = ["errors", "logging", "SdProbeError"]

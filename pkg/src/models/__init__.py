"""
Data models for spectral densities, probes, spectra and run configuration.

This module provides frozen dataclass models that carry validated inputs and
results through the forward and inverse pipelines.
"""

from .experiment import CavityCpbModelParams, ExperimentModel, Regime, TransmonModelParams
from .probe import FrequencyGrid, ProbeConfig
from .run_config import DynamicsSettings, NoiseSpec, ReconstructionSettings, RunConfig, Units
from .spectra import EffectivePotential, EmissionHistory, MeasuredSpectrum, PointFlag, ReconstructionResult, ScatteringSpectrum, SelfEnergy, Verdict
from .spectral_density import LorentzianParams, SpectralDensity, SpectralDensityKind, TabulatedSD

__all__ = [
    "CavityCpbModelParams",
    "ExperimentModel",
    "Regime",
    "TransmonModelParams",
    "FrequencyGrid",
    "ProbeConfig",
    "DynamicsSettings",
    "NoiseSpec",
    "ReconstructionSettings",
    "RunConfig",
    "Units",
    "EffectivePotential",
    "EmissionHistory",
    "MeasuredSpectrum",
    "PointFlag",
    "ReconstructionResult",
    "ScatteringSpectrum",
    "SelfEnergy",
    "Verdict",
    "LorentzianParams",
    "SpectralDensity",
    "SpectralDensityKind",
    "TabulatedSD",
]

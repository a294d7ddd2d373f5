"""Tests of the data models and the run configuration."""

import math

import numpy as np
import pytest

from models.experiment import CavityCpbModelParams, ExperimentModel, Regime, TransmonModelParams
from models.probe import FrequencyGrid, ProbeConfig
from models.run_config import NoiseSpec, RunConfig, Units
from models.spectra import MeasuredSpectrum, PointFlag, ReconstructionResult
from models.spectral_density import SpectralDensity, SpectralDensityKind
from utils.errors import ConfigError, GridMismatch


def test_flat_density_is_zero_outside_support():
    sd = SpectralDensity.flat(0.2, (-1.0, 1.0))
    np.testing.assert_array_equal(sd.evaluate([-2.0, -1.0, 0.0, 1.0, 2.0]), [0.0, 0.2, 0.2, 0.2, 0.0])
    assert sd.value(1.5) == 0.0
    assert sd.peak_value == 0.2


def test_lorentzian_peak_and_default_support():
    sd = SpectralDensity.lorentzian(2.0, 0.5, 1.0)
    assert sd.support == (1.0 - 5000.0, 1.0 + 5000.0)
    np.testing.assert_allclose(sd.value(1.0), 4.0 / (math.pi * 0.5), rtol=1e-15)
    assert sd.features == (1.0,)
    assert sd.width_scale == 0.5


def test_lorentzian_integral_is_g_squared():
    sd = SpectralDensity.lorentzian(1.5, 0.2, 0.0)
    # Truncation at 1e4 widths leaves 2 / (pi * 1e4) of the weight outside
    np.testing.assert_allclose(sd.integral(), 1.5**2 * (1.0 - 2.0 / (math.pi * 1e4)), rtol=1e-8)


def test_ohmic_default_support_reaches_tail_level():
    sd = SpectralDensity.ohmic(0.1, 2.0)
    low, high = sd.support
    assert low == 0.0
    np.testing.assert_allclose(sd.value(high) / sd.peak_value, 1e-12, rtol=1e-6)


def test_band_gap_vanishes_in_gap():
    sd = SpectralDensity.band_gap(0.3, 1.0, 5.0)
    assert sd.value(0.5) == 0.0
    assert sd.value(1.0) == 0.0
    np.testing.assert_allclose(sd.value(2.0), 0.3, rtol=1e-15)
    assert sd.support == (1.0, 5.0)


def test_window_of_lorentzian_matches_threshold():
    sd = SpectralDensity.lorentzian(1.0, 0.5, 2.0)
    low, high = sd.window(1e-4)
    np.testing.assert_allclose(sd.value(high) / sd.peak_value, 1e-4, rtol=1e-10)
    np.testing.assert_allclose(0.5 * (low + high), 2.0, rtol=1e-12)


def test_zero_density_is_null():
    sd = SpectralDensity.zero()
    assert sd.is_null
    np.testing.assert_array_equal(sd.evaluate([0.0, 1.0]), [0.0, 0.0])
    assert sd.integral() == 0.0


@pytest.mark.parametrize(
    "data",
    [
        {"kind": "flat", "params": {"j0": -1.0}, "support": [-1, 1]},
        {"kind": "flat", "params": {"j0": 1.0}},
        {"kind": "lorentzian", "params": {"g": 1.0, "gamma": 0.0, "omega_1": 0.0}},
        {"kind": "ohmic", "params": {"alpha": 0.1, "omega_c": -1.0}},
        {"kind": "band_gap", "params": {"c": -0.1, "omega_e": 0.0, "omega_cut": 1.0}},
        {"kind": "tabulated", "params": {}},
        {"kind": "gaussian", "params": {}},
    ],
)
def test_invalid_density_specifications_are_rejected(data):
    with pytest.raises(ValueError):
        SpectralDensity.from_dict(data)


def test_density_json_form_survives_serialisation():
    sd = SpectralDensity.band_gap(0.3, 1.0, 5.0)
    again = SpectralDensity.from_dict(sd.to_dict())
    assert again.kind is SpectralDensityKind.BAND_GAP
    assert again.support == sd.support
    assert again.params == sd.params


def test_tabulated_density_interpolates_and_rejects_negative_values():
    sd = SpectralDensity.tabulated([0.0, 1.0, 2.0], [0.0, 1.0, 0.0])
    np.testing.assert_allclose(sd.evaluate([0.5, 1.5, 3.0]), [0.5, 0.5, 0.0])
    with pytest.raises(ValueError):
        SpectralDensity.tabulated([0.0, 1.0], [0.1, -0.1])


def test_grid_validation_and_parsing():
    grid = FrequencyGrid.parse("-1:1:5")
    np.testing.assert_allclose(grid.omega, [-1.0, -0.5, 0.0, 0.5, 1.0])
    assert len(grid) == 5
    with pytest.raises(ValueError):
        FrequencyGrid([0.0])
    with pytest.raises(ValueError):
        FrequencyGrid([0.0, 0.0, 1.0])
    with pytest.raises(ValueError):
        FrequencyGrid.parse("0:1")
    with pytest.raises(ValueError):
        grid.omega[0] = 3.0


def test_probe_needs_positive_coupling():
    with pytest.raises(ValueError):
        ProbeConfig(0.0, 0.0, 1.0)
    probe = ProbeConfig(0.0, 2.0, 4.0)
    assert probe.waveguide_rate == 1.0
    assert probe.grid is None
    assert len(probe.with_grid([0.0, 1.0]).grid) == 2


def test_measured_spectrum_validation():
    grid = FrequencyGrid.linspace(0.0, 1.0, 3)
    with pytest.raises(ValueError):
        MeasuredSpectrum(grid, [0.1, 1.2, 0.1], [0.1, 0.1, 0.1])
    with pytest.raises(ValueError):
        MeasuredSpectrum(grid, [0.1, 0.1, 0.1], [0.1, 0.1, 0.1], sigma_r=[0.01] * 3)
    with pytest.raises(GridMismatch):
        MeasuredSpectrum(grid, [0.1, 0.1], [0.1, 0.1])


def test_reconstruction_result_checks_negative_flag():
    grid = FrequencyGrid.linspace(0.0, 1.0, 2)
    with pytest.raises(ValueError):
        ReconstructionResult(grid, [0.1, 0.2], (PointFlag.OK, PointFlag.NONPHYSICAL_NEGATIVE))


def test_transmon_parameters():
    params = TransmonModelParams(omega_0=0.0, gamma_eg=1.0, gamma_l=0.2, gamma_phi=0.1)
    np.testing.assert_allclose(params.gamma, 0.5 + 0.1 + 0.1)
    assert params.regime is Regime.SINGLE_PHOTON
    assert TransmonModelParams(0.0, 1.0, rabi=0.1).regime is Regime.EXTRAPOLATED
    with pytest.raises(ValueError):
        TransmonModelParams(0.0, 0.0)
    with pytest.raises(ValueError):
        TransmonModelParams.from_dict({"omega_0": 0.0})


def test_cavity_parameters_in_megahertz():
    params = CavityCpbModelParams(omega_0=1.0, omega_1=1.0, gamma_1=0.7, g=5.8).in_megahertz()
    np.testing.assert_allclose(params.g, 2.0 * math.pi * 5.8)
    np.testing.assert_allclose(params.waveguide_rate, 2.0 * math.pi)
    with pytest.raises(ValueError):
        CavityCpbModelParams(0.0, 0.0, 0.0, 1.0)


def test_run_config_from_dict():
    cfg = RunConfig.from_dict(
        {
            "probe": {"omega_0": 0.5, "coupling": 1.0, "velocity": 2.0},
            "grid": {"min": -1, "max": 1, "count": 11},
            "sd": {"kind": "flat", "params": {"j0": 0.1}, "support": [-10, 10]},
            "noise": {"sigma_r": 0.01, "sigma_t": 0.02, "seed": 3},
            "output": "somewhere",
        }
    )
    probe = cfg.require_probe()
    assert probe.omega_0 == 0.5
    assert len(cfg.require_grid()) == 11
    assert cfg.sd is not None and cfg.sd.kind is SpectralDensityKind.FLAT
    assert cfg.noise == NoiseSpec(0.01, 0.02, 3)
    assert cfg.seed == 3
    assert cfg.output == "somewhere"


def test_run_config_rejects_unknown_and_conflicting_sections():
    with pytest.raises(ValueError):
        RunConfig.from_dict({"probes": {}})
    with pytest.raises(ValueError):
        RunConfig.from_dict({"sd": {"kind": "zero"}, "spectrum": "file.csv"})


def test_run_config_requirements():
    cfg = RunConfig.from_dict({"probe": {"omega_0": 0.0, "coupling": 1.0, "velocity": 1.0}})
    assert cfg.require_probe(need_grid=False).grid is None
    with pytest.raises(ConfigError):
        cfg.require_probe()
    with pytest.raises(ConfigError):
        cfg.require_spectrum_path()
    with pytest.raises(ConfigError):
        cfg.require_experiment()


def test_run_config_overrides():
    cfg = RunConfig.from_dict({"probe": {"omega_0": 0.0, "coupling": 1.0, "velocity": 1.0}, "noise": {"sigma_r": 0.1, "sigma_t": 0.1}})
    updated = cfg.with_overrides(grid="-2:2:9", seed=11, output="elsewhere")
    assert len(updated.require_probe().grid) == 9
    assert updated.seed == 11
    assert updated.noise is not None and updated.noise.seed == 11
    assert updated.output == "elsewhere"
    noisy = updated.with_overrides(noise="0.5,0.25")
    assert noisy.noise == NoiseSpec(0.5, 0.25, 11)


def test_run_config_megahertz_units():
    cfg = RunConfig.from_dict(
        {
            "units": "mhz",
            "probe": {"omega_0": 1.0, "coupling": 1.0, "velocity": 1.0},
            "grid": {"min": 0.0, "max": 2.0, "count": 3},
            "sd": {"kind": "lorentzian", "params": {"g": 5.8, "gamma": 0.7, "omega_1": 1.0}},
            "experiment": {"model": "cavity_cpb", "params": {"omega_0": 1.0, "omega_1": 1.0, "gamma_1": 0.7, "g": 5.8}},
        }
    )
    two_pi = 2.0 * math.pi
    assert cfg.units is Units.MHZ
    np.testing.assert_allclose(cfg.require_grid().omega, [0.0, two_pi, 2.0 * two_pi])
    np.testing.assert_allclose(cfg.require_probe().waveguide_rate, two_pi)
    assert cfg.sd is not None
    np.testing.assert_allclose(cfg.sd.params["g"], 5.8 * two_pi)
    experiment = cfg.require_experiment()
    assert experiment.model is ExperimentModel.CAVITY_CPB
    np.testing.assert_allclose(experiment.params.omega_1, two_pi)

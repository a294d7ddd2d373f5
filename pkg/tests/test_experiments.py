"""Tests of the transmon and cavity experiment models."""

import numpy as np
import pytest

from models.experiment import CavityCpbModelParams, TransmonModelParams
from models.probe import FrequencyGrid
from models.spectra import MeasuredSpectrum, Verdict
from physics.experiments import cavity_cpb_spectrum, nonmarkovianity_ratio, transmon_flatness, transmon_spectrum
from physics.reconstruct import flatness_function, markovianity_verdict


def _transmon_grid(p: TransmonModelParams) -> FrequencyGrid:
    return FrequencyGrid.linspace(p.omega_0 - 5.0 * p.gamma, p.omega_0 + 5.0 * p.gamma, 101)


def test_lossless_transmon_is_a_perfect_mirror_on_resonance():
    p = TransmonModelParams(omega_0=1.0, gamma_eg=0.4)
    spectrum = transmon_spectrum(p, FrequencyGrid([0.0, 1.0, 2.0]))
    assert spectrum.r[1] == -1.0
    np.testing.assert_allclose(spectrum.reflectance + spectrum.transmittance, 1.0, atol=1e-14)


@pytest.mark.parametrize("rabi", [0.0, 0.5])
def test_transmon_flatness_matches_closed_form(rabi):
    p = TransmonModelParams(omega_0=0.0, gamma_eg=1.0, gamma_l=0.2, gamma_phi=0.1, rabi=rabi)
    grid = _transmon_grid(p)
    measured = flatness_function(MeasuredSpectrum.from_spectrum(transmon_spectrum(p, grid)))
    np.testing.assert_allclose(measured, transmon_flatness(p, grid), rtol=1e-10)


def test_undriven_transmon_is_markovian():
    p = TransmonModelParams(omega_0=0.0, gamma_eg=1.0, gamma_l=0.2, gamma_phi=0.1)
    f_values = flatness_function(MeasuredSpectrum.from_spectrum(transmon_spectrum(p, _transmon_grid(p))))
    np.testing.assert_allclose(f_values, 2.0 * (0.2 + 0.2) / 1.0, rtol=1e-8)
    assert markovianity_verdict(f_values) is Verdict.FLAT


def test_driven_transmon_is_structured():
    p = TransmonModelParams(omega_0=0.0, gamma_eg=1.0, gamma_l=0.2, gamma_phi=0.1, rabi=0.5)
    f_values = flatness_function(MeasuredSpectrum.from_spectrum(transmon_spectrum(p, _transmon_grid(p))))
    assert markovianity_verdict(f_values) is Verdict.STRUCTURED


def test_random_undriven_transmons_are_flat(rng):
    for _ in range(50):
        p = TransmonModelParams(
            omega_0=rng.uniform(-1.0, 1.0),
            gamma_eg=rng.uniform(0.5, 2.0),
            gamma_l=rng.uniform(0.05, 1.0),
            gamma_phi=rng.uniform(0.05, 1.0),
        )
        f_values = flatness_function(MeasuredSpectrum.from_spectrum(transmon_spectrum(p, _transmon_grid(p))))
        assert markovianity_verdict(f_values) is Verdict.FLAT


def test_cavity_ratio_of_reported_device():
    p = CavityCpbModelParams(omega_0=0.0, omega_1=0.0, gamma_1=0.7, g=5.8).in_megahertz()
    ratio = nonmarkovianity_ratio(p)
    assert abs(ratio - 274.6) <= 0.5
    assert ratio > 1.0


def test_cavity_ratio_threshold():
    assert nonmarkovianity_ratio(CavityCpbModelParams(0.0, 0.0, 1.0, 0.5)) == 1.0
    assert nonmarkovianity_ratio(CavityCpbModelParams(0.0, 0.0, 1.0, 0.0)) == 0.0


def test_uncoupled_cavity_reflects_fully_on_resonance():
    p = CavityCpbModelParams(omega_0=0.5, omega_1=0.0, gamma_1=1.0, g=0.0)
    spectrum = cavity_cpb_spectrum(p, FrequencyGrid([0.0, 0.5, 1.0]))
    np.testing.assert_allclose(spectrum.r[1], -1.0, atol=1e-14)
    np.testing.assert_allclose(spectrum.absorbance, 0.0, atol=1e-14)


def test_cavity_spectrum_conserves_flux():
    p = CavityCpbModelParams(omega_0=0.0, omega_1=0.3, gamma_1=0.5, g=2.0, coupling=1.2, velocity=0.9)
    spectrum = cavity_cpb_spectrum(p, FrequencyGrid.linspace(-6.0, 6.0, 121))
    np.testing.assert_array_equal(spectrum.t, 1.0 + spectrum.r)
    assert np.all(spectrum.absorbance >= -1e-12)
    np.testing.assert_allclose(spectrum.absorbance, 1.0 - spectrum.reflectance - spectrum.transmittance, atol=1e-12)

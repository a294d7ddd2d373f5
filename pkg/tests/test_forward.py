"""Tests of the forward scattering chain."""

import math

import numpy as np
import pytest

from models.experiment import CavityCpbModelParams
from models.probe import FrequencyGrid, ProbeConfig
from models.spectra import EffectivePotential, SelfEnergy
from models.spectral_density import SpectralDensity, eval_sd
from physics.experiments import cavity_cpb_spectrum, cavity_probe, cavity_spectral_density
from physics.forward import (
    DIVERGENT,
    effective_potential,
    emission_amplitude,
    fgr_rate,
    forward_spectrum,
    reflection_transmission,
    self_energy,
)


def test_lorentzian_self_energy_matches_closed_form():
    g, gamma, omega_1 = 2.0, 0.5, 1.0
    sd = SpectralDensity.lorentzian(g, gamma, omega_1)
    grid = FrequencyGrid.linspace(omega_1 - 20.0 * gamma, omega_1 + 20.0 * gamma, 512)
    se = self_energy(sd, grid)
    expected = g**2 / (grid.omega - omega_1 + 1j * gamma)
    np.testing.assert_allclose(se.values, expected, rtol=1e-8)


def test_self_energy_of_zero_density_vanishes():
    se = self_energy(SpectralDensity.zero(), [-1.0, 0.0, 1.0])
    np.testing.assert_array_equal(se.values, np.zeros(3))


def test_zero_density_gives_bare_emitter_spectrum(unit_probe):
    spectrum = forward_spectrum(SpectralDensity.zero(), unit_probe)
    delta = unit_probe.grid.omega
    np.testing.assert_allclose(spectrum.r, -1j / (delta + 1j), rtol=1e-14)
    assert np.all(spectrum.absorbance <= 1e-12)
    np.testing.assert_allclose(spectrum.reflectance + spectrum.transmittance, 1.0, atol=1e-14)


def test_divergence_marker_gives_perfect_mirror():
    grid = FrequencyGrid([0.0, 1.0])
    se = SelfEnergy(grid, [0.0, 0.0], [0.0, 0.0])
    amplitude = emission_amplitude(se, 0.0)
    assert amplitude[0] == DIVERGENT
    wp = effective_potential(amplitude, 1.0, grid)
    assert wp.divergent.tolist() == [True, False]
    spectrum = reflection_transmission(wp, 1.0)
    assert spectrum.r[0] == -1.0
    assert spectrum.t[0] == 0.0
    assert spectrum.absorbance[0] == 0.0


def test_reflection_needs_a_grid():
    with pytest.raises(ValueError):
        reflection_transmission(EffectivePotential(np.array([1.0 + 0.0j])), 1.0)


@pytest.mark.slow
def test_lorentzian_forward_matches_cavity_model(rng):
    for _ in range(1000):
        gamma_1 = 1.0
        ratio = rng.uniform(0.1, 20.0)
        params = CavityCpbModelParams(
            omega_0=rng.uniform(-2.0, 2.0),
            omega_1=rng.uniform(-2.0, 2.0),
            gamma_1=gamma_1,
            g=ratio * gamma_1,
            coupling=rng.uniform(0.5, 2.0),
            velocity=rng.uniform(0.5, 1.5),
        )
        grid = FrequencyGrid.linspace(params.omega_1 - 5.0, params.omega_1 + 5.0, 41)
        generic = forward_spectrum(cavity_spectral_density(params), cavity_probe(params, grid), epsrel=1e-11)
        closed = cavity_cpb_spectrum(params, grid)
        assert np.max(np.abs(generic.r - closed.r)) <= 1e-8


@pytest.mark.parametrize(
    "sd",
    [
        SpectralDensity.flat(0.05, (-20.0, 20.0)),
        SpectralDensity.lorentzian(1.0, 0.3, 0.5),
        SpectralDensity.ohmic(0.05, 2.0),
        SpectralDensity.band_gap(0.2, -1.0, 10.0),
    ],
    ids=["flat", "lorentzian", "ohmic", "band_gap"],
)
def test_scattering_identities(sd):
    probe = ProbeConfig(0.3, 0.8, 1.1, FrequencyGrid.linspace(-4.0, 4.0, 161))
    spectrum = forward_spectrum(sd, probe)
    np.testing.assert_array_equal(spectrum.t, 1.0 + spectrum.r)
    assert np.all(spectrum.reflectance + spectrum.transmittance <= 1.0 + 1e-12)
    np.testing.assert_allclose(spectrum.absorbance, 1.0 - spectrum.reflectance - spectrum.transmittance, atol=1e-9)
    assert np.all(spectrum.absorbance >= -1e-12)


def test_absorbance_vanishes_in_band_gap():
    sd = SpectralDensity.band_gap(0.2, 1.0, 10.0)
    probe = ProbeConfig(0.0, 1.0, 1.0, FrequencyGrid.linspace(-3.0, 0.9, 80))
    spectrum = forward_spectrum(sd, probe)
    np.testing.assert_allclose(spectrum.absorbance, 0.0, atol=1e-12)


def test_fgr_rate():
    assert fgr_rate(SpectralDensity.flat(0.01, (-1.0, 1.0)), 0.0) == 2.0 * math.pi * 0.01
    assert fgr_rate(SpectralDensity.band_gap(0.2, 1.0, 10.0), 0.0) == 0.0


def _random_density(rng):
    family = rng.integers(4)
    if family == 0:
        low = rng.uniform(-30.0, 0.0)
        return SpectralDensity.flat(rng.uniform(0.0, 1.0), (low, low + rng.uniform(0.5, 40.0)))
    if family == 1:
        return SpectralDensity.lorentzian(rng.uniform(0.1, 3.0), rng.uniform(0.1, 2.0), rng.uniform(-2.0, 2.0))
    if family == 2:
        return SpectralDensity.ohmic(rng.uniform(0.0, 0.5), rng.uniform(0.5, 5.0))
    omega_e = rng.uniform(-2.0, 2.0)
    return SpectralDensity.band_gap(rng.uniform(0.0, 1.0), omega_e, omega_e + rng.uniform(2.0, 10.0))


@pytest.mark.slow
def test_random_scattering_identities(rng):
    for _ in range(500):
        sd = _random_density(rng)
        low = rng.uniform(-5.0, 3.0)
        grid = FrequencyGrid.linspace(low, low + rng.uniform(0.5, 5.0), 7)
        coupling, velocity = rng.uniform(0.2, 3.0), rng.uniform(0.2, 3.0)

        amplitude = emission_amplitude(self_energy(sd, grid), rng.uniform(-2.0, 2.0))
        wp = effective_potential(amplitude, coupling, grid)
        assert np.all(wp.absorptive >= 0.0)
        assert np.all(-wp.values[~wp.divergent].imag >= 0.0)

        spectrum = reflection_transmission(wp, velocity)
        np.testing.assert_array_equal(spectrum.t, 1.0 + spectrum.r)
        np.testing.assert_allclose(spectrum.t - spectrum.r, 1.0, rtol=0.0, atol=2e-15)
        assert np.all(spectrum.reflectance + spectrum.transmittance <= 1.0 + 1e-12)
        np.testing.assert_allclose(spectrum.absorbance, 1.0 - spectrum.reflectance - spectrum.transmittance, atol=1e-9)


def test_random_densities_are_non_negative(rng):
    for _ in range(200):
        sd = _random_density(rng)
        low, high = sd.support
        span = max(high - low, 1.0)
        omega = rng.uniform(low - span, high + span, 500)
        assert np.all(sd.evaluate(omega) >= 0.0)
        assert all(eval_sd(sd, value) >= 0.0 for value in omega[:10])

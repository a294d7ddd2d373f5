"""Tests of the emission dynamics and its oracles."""

import numpy as np
import pytest

from models.spectra import EmissionHistory
from models.spectral_density import SpectralDensity
from physics.dynamics import (
    bound_states,
    discrete_bath_oracle,
    emission_dynamics,
    fit_decay_rate,
    pseudomode_dynamics,
)
from physics.forward import fgr_rate
from utils.errors import WindowTooNarrow


def test_weak_flat_coupling_decays_at_golden_rule_rate():
    sd = SpectralDensity.flat(0.01, (-500.0, 500.0))
    rate = fgr_rate(sd, 0.0)
    history = emission_dynamics(sd, 0.0, 3.0 / rate)
    np.testing.assert_allclose(history.population[0], 1.0, atol=2e-3)
    np.testing.assert_allclose(fit_decay_rate(history), rate, rtol=0.05)


def test_strong_lorentzian_matches_pseudomode():
    sd = SpectralDensity.lorentzian(8.29, 1.0, 0.0)
    spectral = emission_dynamics(sd, 0.0, 10.0)
    exact = pseudomode_dynamics(sd, 0.0, 10.0)
    np.testing.assert_array_equal(spectral.times, exact.times)
    assert np.max(np.abs(np.abs(spectral.amplitude) - np.abs(exact.amplitude))) <= 1e-3


def test_weak_pseudomode_decays_at_golden_rule_rate():
    sd = SpectralDensity.lorentzian(0.1, 1.0, 0.0)
    rate = fgr_rate(sd, 0.0)
    history = pseudomode_dynamics(sd, 0.0, 3.0 / rate)
    assert history.amplitude[0] == 1.0
    assert np.all(np.diff(history.population) <= 1e-12)
    np.testing.assert_allclose(fit_decay_rate(history), rate, rtol=0.05)


def test_zero_density_has_bare_bound_state():
    sd = SpectralDensity.zero()
    states = bound_states(sd, 0.4)
    assert len(states) == 1
    assert states[0].omega == 0.4 and states[0].weight == 1.0

    history = emission_dynamics(sd, 0.4, 3.0, n_t=31)
    np.testing.assert_allclose(history.population, 1.0, rtol=1e-14)
    oracle = discrete_bath_oracle(sd, 0.4, 10, 3.0, n_t=31)
    np.testing.assert_allclose(oracle.amplitude, history.amplitude, atol=1e-14)


def test_band_gap_traps_part_of_the_excitation():
    sd = SpectralDensity.band_gap(0.2, 1.0, 10.0)
    below = [state for state in bound_states(sd, 0.0) if state.omega < 1.0]
    assert len(below) == 1
    assert below[0].omega < 0.0
    assert 0.0 < below[0].weight < 1.0

    history = emission_dynamics(sd, 0.0, 50.0)
    assert history.population[-1] > 0.5 * below[0].weight ** 2


def test_narrow_window_is_rejected():
    sd = SpectralDensity.lorentzian(1.0, 0.5, 0.0)
    with pytest.raises(WindowTooNarrow):
        emission_dynamics(sd, 0.0, 5.0, window=(-1.0, 1.0))


def test_dynamics_arguments_are_validated():
    sd = SpectralDensity.flat(0.01, (-1.0, 1.0))
    with pytest.raises(ValueError):
        emission_dynamics(sd, 0.0, 0.0)
    with pytest.raises(ValueError):
        discrete_bath_oracle(sd, 0.0, 1, 1.0)


def test_fit_decay_rate_of_exponential():
    times = np.linspace(0.0, 10.0, 101)
    history = EmissionHistory(times, np.exp(-0.25 * times - 1j * times))
    np.testing.assert_allclose(fit_decay_rate(history), 0.5, rtol=1e-10)
    with pytest.raises(ValueError):
        fit_decay_rate(EmissionHistory([0.0, 1.0, 2.0], [1.0, 0.0, 0.0]))


def _max_modulus_gap(first, second):
    np.testing.assert_array_equal(first.times, second.times)
    return float(np.max(np.abs(np.abs(first.amplitude) - np.abs(second.amplitude))))


@pytest.mark.slow
def test_discrete_bath_matches_pseudomode_for_strong_lorentzian():
    sd = SpectralDensity.lorentzian(8.29, 1.0, 0.0)
    oracle = discrete_bath_oracle(sd, 0.0, 4000, 10.0)
    assert _max_modulus_gap(oracle, pseudomode_dynamics(sd, 0.0, 10.0)) <= 1e-3


@pytest.mark.slow
def test_discrete_bath_deviation_shrinks_with_mode_count():
    sd = SpectralDensity.lorentzian(8.29, 1.0, 0.0)
    reference = emission_dynamics(sd, 0.0, 10.0)
    deviations = [_max_modulus_gap(discrete_bath_oracle(sd, 0.0, n_modes, 10.0), reference) for n_modes in (500, 1000, 2000, 4000)]
    # saturates once the discretization error drops below the stepper tolerance
    for earlier, later in zip(deviations, deviations[1:]):
        assert later <= earlier + 1e-6
    assert deviations[-1] <= 1e-3


@pytest.mark.slow
@pytest.mark.parametrize(
    "sd, omega_0",
    [
        (SpectralDensity.flat(0.05, (-20.0, 20.0)), 0.0),
        (SpectralDensity.lorentzian(1.0, 0.3, 0.5), 0.5),
        (SpectralDensity.ohmic(0.05, 2.0), 1.0),
        (SpectralDensity.band_gap(0.2, 1.0, 10.0), 1.5),
        (SpectralDensity.band_gap(0.2, 1.0, 10.0), 0.5),
    ],
    ids=["flat", "lorentzian", "ohmic", "band_gap", "band_gap_in_gap"],
)
def test_spectral_dynamics_agrees_with_discrete_bath(sd, omega_0):
    spectral = emission_dynamics(sd, omega_0, 20.0)
    oracle = discrete_bath_oracle(sd, omega_0, 4000, 20.0)
    assert _max_modulus_gap(spectral, oracle) <= 1e-2


@pytest.mark.slow
def test_coarse_discrete_bath_revives():
    sd = SpectralDensity.flat(0.01, (-20.0, 20.0))
    t_max = 3.0 / fgr_rate(sd, 0.0)
    reference = emission_dynamics(sd, 0.0, t_max)
    fine = _max_modulus_gap(discrete_bath_oracle(sd, 0.0, 4000, t_max), reference)
    assert fine <= 1e-2
    # 200 modes revive before t_max
    assert _max_modulus_gap(discrete_bath_oracle(sd, 0.0, 200, t_max), reference) > fine

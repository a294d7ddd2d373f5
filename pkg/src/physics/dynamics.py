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
Time-domain emission of the probe into its reservoir.

Three independent routes to the excited-state amplitude epsilon(t):

``emission_dynamics``
    Spectral representation. Inverting the Laplace-domain amplitude along the
    real axis gives

        epsilon(t) = integral rho(w) exp(-i w t) dw + sum_b Z_b exp(-i w_b t)

    with the spectral weight rho = J / ((w - omega_0 - P)**2 + (pi J)**2) on
    the support and bound states w_b (real poles outside the support) of
    weight Z_b. rho is interpolated on adaptive Chebyshev panels and the
    Fourier integral is taken panel by panel.
``discrete_bath_oracle``
    Brute-force integration of the single-excitation equations of the probe
    coupled to a finite set of reservoir modes.
``pseudomode_dynamics``
    Exact two-variable system equivalent to a Lorentzian reservoir.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from numpy.typing import ArrayLike
from scipy import integrate, linalg, optimize

from models.spectra import EmissionHistory  # pylint: disable=import-error,no-name-in-module
from models.spectral_density import LorentzianParams, SpectralDensity  # pylint: disable=import-error,no-name-in-module
from physics.forward import principal_parts  # pylint: disable=import-error,no-name-in-module
from physics.quadrature import (  # pylint: disable=import-error,no-name-in-module
    ENDPOINT_CLAMP,
    adaptive_chebyshev,
    checked_quad,
    graded_edges,
    panel_fourier,
    principal_value,
)
from utils.errors import QuadratureFailure, StepperFailure, WindowTooNarrow  # pylint: disable=import-error,no-name-in-module

LOGGER = logging.getLogger("sdprobe.dynamics")

# Spectral-weight level below which a panel is left out of the Fourier integral
WINDOW_LEVEL = 1e-8
SUM_RULE_TOLERANCE = 1e-3
SPECTRAL_RTOL = 1e-7
SPECTRAL_EPSREL = 1e-11
MAX_SPECTRAL_PANELS = 4000

ORACLE_WINDOW_LEVEL = 1e-4
ORACLE_RTOL = 1e-10
ORACLE_ATOL = 1e-12
NORM_TOLERANCE = 1e-8


@dataclass(frozen=True)
class BoundState:
    """
    Real pole of the emission amplitude outside the reservoir support.

    Attributes
    ----------
    omega : float
        Frequency of the dressed state.
    weight : float
        Residue Z in (0, 1]; the long-time population is Z**2.
    """

    omega: float
    weight: float


def _resonance_function(sd: SpectralDensity, omega_0: float, epsrel: float) -> Callable[[float], float]:
    density = sd.scalar()
    features = sd.features
    peak = sd.peak_value
    return lambda omega: omega - omega_0 - principal_value(density, sd.support, omega, features, peak, epsrel)


def spectral_weight(sd: SpectralDensity, omega_0: float, omega: ArrayLike, epsrel: float = SPECTRAL_EPSREL) -> np.ndarray:
    """
    Continuum spectral weight of the dressed probe.

    Parameters
    ----------
    sd : SpectralDensity
        Spectral density.
    omega_0 : float
        Probe transition frequency.
    omega : array_like
        Frequencies.
    epsrel : float, optional
        Relative tolerance of the principal value.

    Returns
    -------
    numpy.ndarray
        rho(omega) = J / ((omega - omega_0 - P)**2 + (pi J)**2), zero where J is.
    """
    omega = np.atleast_1d(np.asarray(omega, dtype=float))
    density = sd.evaluate(omega)
    weight = np.zeros_like(omega)
    inside = density > 0
    if np.any(inside):
        detuning = omega[inside] - omega_0 - principal_parts(sd, omega[inside], epsrel)
        weight[inside] = density[inside] / (detuning**2 + (math.pi * density[inside]) ** 2)
    return weight


def _residue(sd: SpectralDensity, omega_b: float, epsrel: float) -> float:
    low, high = sd.support
    span = high - low
    density = sd.scalar()
    if low - span <= omega_b < low:
        anchor = density(low)
    elif high < omega_b <= high + span:
        anchor = density(high)
    else:
        anchor = 0.0

    def integrand(x: float) -> float:
        return (density(x) - anchor) / (omega_b - x) ** 2

    slope = checked_quad(integrand, low, high, sd.features, epsrel=epsrel, epsabs=1e-2 * epsrel * sd.peak_value / span**2, label="bound-state residue")
    slope += anchor * (1.0 / (omega_b - high) - 1.0 / (omega_b - low))
    return 1.0 / (1.0 + slope)


def bound_states(sd: SpectralDensity, omega_0: float, epsrel: float = SPECTRAL_EPSREL) -> tuple[BoundState, ...]:
    """
    Dressed states lying outside the reservoir support.

    Outside the support F(w) = w - omega_0 - P(w) is strictly increasing, so
    there is at most one root below and one above it. Roots closer to a
    support end than 1e-12 of the support width are dropped; their weight is
    negligible.

    Parameters
    ----------
    sd : SpectralDensity
        Spectral density.
    omega_0 : float
        Probe transition frequency.
    epsrel : float, optional
        Relative tolerance of the principal values.

    Returns
    -------
    tuple[BoundState, ...]
        Bound states in increasing frequency order. A vanishing reservoir gives
        the bare state (omega_0, 1).

    Raises
    ------
    QuadratureFailure
        If a principal value does not converge or no bracket is found.
    """
    if sd.is_null:
        return (BoundState(omega_0, 1.0),)

    low, high = sd.support
    span = high - low
    offset = ENDPOINT_CLAMP * span
    resonance = _resonance_function(sd, omega_0, epsrel)
    states = []

    # Check if a root hides below the support
    inner = low - offset
    if resonance(inner) > 0:
        step = span
        while resonance(low - step) >= 0:
            step *= 2.0
            if step > 1e12 * span:
                raise QuadratureFailure("No bracket found for the bound state below the support")
        root = optimize.brentq(resonance, low - step, inner, xtol=1e-15 * max(1.0, abs(low)), maxiter=200)
        states.append(BoundState(float(root), _residue(sd, root, epsrel)))

    # Check if a root hides above the support
    inner = high + offset
    if resonance(inner) < 0:
        step = span
        while resonance(high + step) <= 0:
            step *= 2.0
            if step > 1e12 * span:
                raise QuadratureFailure("No bracket found for the bound state above the support")
        root = optimize.brentq(resonance, inner, high + step, xtol=1e-15 * max(1.0, abs(high)), maxiter=200)
        states.append(BoundState(float(root), _residue(sd, root, epsrel)))

    for state in states:
        LOGGER.debug("Bound state at omega = %.10g with weight %.6g", state.omega, state.weight)
    return tuple(states)


def _spectral_panels(sd: SpectralDensity, omega_0: float, low: float, high: float, epsrel: float):
    span = high - low
    resonance = _resonance_function(sd, omega_0, epsrel)

    anchors = list(sd.features)
    if low < omega_0 < high:
        anchors.append(omega_0)
    scales = [sd.width_scale]
    if sd.value(omega_0) > 0:
        scales.append(math.pi * sd.value(omega_0))
    floor = 1e-10 * span
    coarse = sorted(set(graded_edges(low, high, anchors, max(min(scales) / 4.0, floor))) | set(np.linspace(low, high, 65).tolist()))

    # Dressed resonances: sign changes of omega - omega_0 - P(omega)
    values = [resonance(point) for point in coarse]
    roots = []
    for (left, f_left), (right, f_right) in zip(zip(coarse[:-1], values[:-1]), zip(coarse[1:], values[1:])):
        if f_left == 0.0:
            roots.append(left)
        elif f_left * f_right < 0:
            roots.append(float(optimize.brentq(resonance, left, right, xtol=1e-12 * span)))
    for root in roots:
        local = math.pi * sd.value(root)
        if local > 0:
            scales.append(local)
    LOGGER.debug("Dressed resonances at %s", ", ".join(f"{root:.6g}" for root in roots) or "none")

    edges = graded_edges(low, high, anchors + roots, max(min(scales) / 4.0, floor))
    return adaptive_chebyshev(
        lambda omega: spectral_weight(sd, omega_0, omega, epsrel),
        edges,
        SPECTRAL_RTOL,
        min_width=floor,
        max_panels=MAX_SPECTRAL_PANELS,
    )


def emission_dynamics(
    sd: SpectralDensity,
    omega_0: float,
    t_max: float,
    n_t: int = 201,
    window: Optional[tuple[float, float]] = None,
    epsrel: float = SPECTRAL_EPSREL,
) -> EmissionHistory:
    """
    Excited-state amplitude from the spectral representation.

    Parameters
    ----------
    sd : SpectralDensity
        Spectral density.
    omega_0 : float
        Probe transition frequency.
    t_max : float
        Final time, positive.
    n_t : int, optional
        Number of evenly spaced output times including t = 0.
    window : tuple[float, float], optional
        Frequency window of the continuum integral. Defaults to the support,
        trimmed where the spectral weight stays below 1e-8 of its peak.
    epsrel : float, optional
        Relative tolerance of the principal values.

    Returns
    -------
    EmissionHistory
        epsilon(t) on the output times.

    Raises
    ------
    WindowTooNarrow
        If the window cuts spectral weight above 1e-8 of the peak, or the
        total weight differs from one by more than 1e-3.
    QuadratureFailure
        If a principal value does not converge.
    """
    if not t_max > 0:
        raise ValueError(f"t_max must be positive, got {t_max}")
    if n_t < 2:
        raise ValueError("n_t must be at least 2")
    times = np.linspace(0.0, t_max, n_t)

    states = bound_states(sd, omega_0, epsrel)
    amplitude = np.zeros(times.shape, dtype=complex)
    for state in states:
        amplitude += state.weight * np.exp(-1j * state.omega * times)

    if not sd.is_null:
        low, high = sd.support
        if window is not None:
            low, high = max(low, window[0]), min(high, window[1])
        if high > low:
            panels = _spectral_panels(sd, omega_0, low, high, epsrel)
            peak = max(panel.peak for panel in panels)
            kept = [panel for panel in panels if panel.peak >= WINDOW_LEVEL * peak]

            # An explicit window must not cut into the significant weight
            if window is not None:
                for edge in (low, high):
                    if sd.support[0] < edge < sd.support[1] and spectral_weight(sd, omega_0, edge, epsrel)[0] > WINDOW_LEVEL * peak:
                        raise WindowTooNarrow(f"Spectral weight at the window edge {edge:.6g} exceeds {WINDOW_LEVEL:g} of its peak")

            LOGGER.debug("Continuum over [%.6g, %.6g] with %d of %d panels", kept[0].low, kept[-1].high, len(kept), len(panels))
            amplitude += panel_fourier(kept, times)

    total = amplitude[0]
    if abs(total - 1.0) > SUM_RULE_TOLERANCE:
        raise WindowTooNarrow(f"Spectral weight sums to {total.real:.6g}, not 1; the frequency window misses part of the spectrum")

    LOGGER.info("Emission dynamics of '%s' up to t = %.6g (%d bound states, weight %.9f)", sd.kind, t_max, len(states), total.real)
    return EmissionHistory(times, amplitude)


def discrete_bath_oracle(
    sd: SpectralDensity,
    omega_0: float,
    n_modes: int,
    t_max: float,
    n_t: int = 201,
    window: Optional[tuple[float, float]] = None,
) -> EmissionHistory:
    """
    Excited-state amplitude of the probe coupled to a discretised reservoir.

    The window is cut into ``n_modes`` equal bins; each bin becomes one mode
    at its midpoint with coupling sqrt(J(w_i) * dw). The single-excitation
    equations are integrated in the frame rotating at omega_0 with an
    adaptive Dormand-Prince 5(4) pair.

    Parameters
    ----------
    sd : SpectralDensity
        Spectral density.
    omega_0 : float
        Probe transition frequency.
    n_modes : int
        Number of reservoir modes, at least 2.
    t_max : float
        Final time, positive.
    n_t : int, optional
        Number of evenly spaced output times including t = 0.
    window : tuple[float, float], optional
        Discretised frequency range. Defaults to where J exceeds 1e-4 of its peak.

    Returns
    -------
    EmissionHistory
        epsilon(t) on the output times.

    Raises
    ------
    StepperFailure
        If the stepper fails or the norm drifts by more than 1e-8.
    """
    if n_modes < 2:
        raise ValueError(f"The oracle needs at least two modes, got {n_modes}")
    if not t_max > 0:
        raise ValueError(f"t_max must be positive, got {t_max}")
    times = np.linspace(0.0, t_max, n_t)
    if sd.is_null:
        return EmissionHistory(times, np.exp(-1j * omega_0 * times))

    low, high = window if window is not None else sd.window(ORACLE_WINDOW_LEVEL)
    cuts = np.linspace(low, high, n_modes + 1)
    modes = 0.5 * (cuts[1:] + cuts[:-1])
    couplings = np.sqrt(sd.evaluate(modes) * np.diff(cuts))
    detunings = modes - omega_0

    def rhs(_: float, state: np.ndarray) -> np.ndarray:
        derivative = np.empty_like(state)
        derivative[0] = -1j * np.dot(couplings, state[1:])
        derivative[1:] = -1j * (detunings * state[1:] + couplings * state[0])
        return derivative

    initial = np.zeros(n_modes + 1, dtype=complex)
    initial[0] = 1.0
    LOGGER.debug("Discrete bath: %d modes on [%.6g, %.6g], spacing %.3g", n_modes, low, high, cuts[1] - cuts[0])
    solution = integrate.solve_ivp(rhs, (0.0, t_max), initial, method="RK45", t_eval=times, rtol=ORACLE_RTOL, atol=ORACLE_ATOL)
    if not solution.success:
        raise StepperFailure(f"Discrete-bath integration failed: {solution.message}")

    drift = float(np.max(np.abs(np.sum(np.abs(solution.y) ** 2, axis=0) - 1.0)))
    if drift > NORM_TOLERANCE:
        raise StepperFailure(f"Discrete-bath norm drifted by {drift:.3g} (tolerance {NORM_TOLERANCE:g})")

    LOGGER.info("Discrete-bath oracle with %d modes finished (%d evaluations, norm drift %.2g)", n_modes, solution.nfev, drift)
    return EmissionHistory(times, solution.y[0] * np.exp(-1j * omega_0 * times))


def pseudomode_dynamics(params: LorentzianParams | SpectralDensity, omega_0: float, t_max: float, n_t: int = 201) -> EmissionHistory:
    """
    Exact amplitude for a Lorentzian reservoir via its pseudomode.

    Solves d(eps)/dt = -i omega_0 eps - i g b and db/dt = -(i omega_1 + gamma) b - i g eps
    with the matrix exponential.

    Parameters
    ----------
    params : LorentzianParams or SpectralDensity
        Lorentzian parameters, or a Lorentzian spectral density.
    omega_0 : float
        Probe transition frequency.
    t_max : float
        Final time, positive.
    n_t : int, optional
        Number of evenly spaced output times including t = 0.

    Returns
    -------
    EmissionHistory
        epsilon(t) on the output times.
    """
    if isinstance(params, SpectralDensity):
        params = params.lorentzian_params
    times = np.linspace(0.0, t_max, n_t)
    generator = np.array(
        [
            [-1j * omega_0, -1j * params.g],
            [-1j * params.g, -(1j * params.omega_1 + params.gamma)],
        ]
    )
    amplitude = np.array([linalg.expm(generator * time)[0, 0] for time in times])
    return EmissionHistory(times, amplitude)


def fit_decay_rate(history: EmissionHistory, floor: float = math.exp(-3.0)) -> float:
    """
    Exponential decay rate of the excited-state population.

    Least-squares slope of ln|eps|**2 over the times where the population is
    still above ``floor``.

    Parameters
    ----------
    history : EmissionHistory
        Emission history.
    floor : float, optional
        Smallest population used in the fit.

    Returns
    -------
    float
        Fitted rate (positive for decay).

    Raises
    ------
    ValueError
        If fewer than two points lie above the floor.
    """
    population = history.population
    usable = (population >= floor) & (population > 0)
    if np.count_nonzero(usable) < 2:
        raise ValueError("Too few points above the population floor to fit a decay rate")
    slope = np.polyfit(history.times[usable], np.log(population[usable]), 1)[0]
    return float(-slope)

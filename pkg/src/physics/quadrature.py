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
Quadrature building blocks.

This module wraps QUADPACK (through ``scipy.integrate.quad``) with explicit
convergence checks, evaluates Cauchy principal values by singularity
subtraction, and provides piecewise Chebyshev interpolation with a matching
Gauss-Legendre Fourier transform for the time-domain engine.
"""

import logging
import math
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np
from numpy.polynomial import chebyshev, legendre
from scipy import integrate

from utils.errors import QuadratureFailure  # pylint: disable=import-error,no-name-in-module

LOGGER = logging.getLogger("sdprobe.quadrature")

DEFAULT_EPSREL = 1e-9
QUAD_LIMIT = 500

# Distance (relative to the support width) kept between omega and a support end
ENDPOINT_CLAMP = 1e-12

CHEBYSHEV_DEGREE = 15
GAUSS_LEGENDRE_NODES = 16

# Largest phase change (radians) across one Gauss-Legendre sub-panel at t_max
SUBPANEL_PHASE = 10.0

# Upper bound on the size of one exp(-i omega t) block
FOURIER_BLOCK = 2_000_000


def checked_quad(
    func: Callable[[float], float],
    low: float,
    high: float,
    points: Iterable[float] = (),
    epsrel: float = DEFAULT_EPSREL,
    epsabs: float = 0.0,
    label: str = "integral",
) -> float:
    """
    Adaptive Gauss-Kronrod quadrature that fails loudly.

    Parameters
    ----------
    func : Callable[[float], float]
        Integrand.
    low, high : float
        Finite integration limits.
    points : Iterable[float], optional
        Break points where the integrand has local difficulties. Points that
        are not strictly inside (low, high) are ignored.
    epsrel : float, optional
        Requested relative tolerance.
    epsabs : float, optional
        Requested absolute tolerance.
    label : str, optional
        Name of the integral used in error messages.

    Returns
    -------
    float
        The integral.

    Raises
    ------
    QuadratureFailure
        If QUADPACK reports a problem and its error estimate exceeds the
        requested tolerance by more than a factor of ten.
    """
    interior = sorted({float(point) for point in points if low < point < high})
    limit = max(QUAD_LIMIT, 2 * len(interior) + 50)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        output = integrate.quad(func, low, high, points=interior or None, epsabs=epsabs, epsrel=epsrel, limit=limit, full_output=1)

    value, abserr = float(output[0]), float(output[1])
    if len(output) > 3 and abserr > 10.0 * max(epsabs, epsrel * abs(value)):
        raise QuadratureFailure(f"{label} on [{low:.6g}, {high:.6g}] did not converge: {value:.6g} +/- {abserr:.3g} ({output[3]})")
    if not math.isfinite(value):
        raise QuadratureFailure(f"{label} on [{low:.6g}, {high:.6g}] is not finite")
    return value


def principal_value(
    density: Callable[[float], float],
    support: tuple[float, float],
    omega: float,
    features: Sequence[float] = (),
    peak: float = 1.0,
    epsrel: float = DEFAULT_EPSREL,
) -> float:
    """
    Cauchy principal value of the integral of J(x) / (omega - x) over the support.

    The pole is removed by subtracting a constant c from J:

        P = integral (J(x) - c) / (omega - x) dx + c * ln|(omega - a) / (omega - b)|

    with c = J(omega) inside the support. Just outside the support c is the
    value at the nearest end, which tames the near-logarithmic growth when J
    does not vanish there. Far away c = 0 and the integral is proper.

    Parameters
    ----------
    density : Callable[[float], float]
        Float evaluator of J, zero outside the support.
    support : tuple[float, float]
        Support [a, b] of J.
    omega : float
        Frequency of the pole.
    features : Sequence[float], optional
        Break points of J (peaks, kinks).
    peak : float, optional
        Scale of J, used for the absolute tolerance.
    epsrel : float, optional
        Requested relative tolerance.

    Returns
    -------
    float
        P(omega).

    Raises
    ------
    QuadratureFailure
        If the subtracted integral does not converge.
    """
    low, high = support
    if not high > low:
        return 0.0
    span = high - low
    clamp = ENDPOINT_CLAMP * span

    # Keep omega off the support ends where the logarithm diverges
    if abs(omega - low) < clamp:
        omega = low - clamp if omega < low else low + clamp
    elif abs(omega - high) < clamp:
        omega = high + clamp if omega > high else high - clamp

    if low < omega < high:
        anchor = density(omega)
    elif low - span <= omega <= low:
        anchor = density(low)
    elif high <= omega <= high + span:
        anchor = density(high)
    else:
        anchor = 0.0

    def integrand(x: float) -> float:
        if x == omega:
            return 0.0
        return (density(x) - anchor) / (omega - x)

    points = list(features)
    if low < omega < high:
        points.append(omega)

    epsabs = 1e-2 * epsrel * peak
    subtracted = checked_quad(integrand, low, high, points, epsrel=epsrel, epsabs=epsabs, label=f"principal value at omega={omega:.6g}")
    if anchor == 0.0:
        return subtracted
    return subtracted + anchor * math.log(abs((omega - low) / (omega - high)))


@dataclass(frozen=True)
class ChebyshevPanel:
    """
    Degree-15 Chebyshev interpolant of a function on one interval.

    Attributes
    ----------
    low, high : float
        Panel edges.
    coefficients : numpy.ndarray
        Chebyshev coefficients on the panel mapped to [-1, 1].
    peak : float
        Largest magnitude of the sampled values.
    """

    low: float
    high: float
    coefficients: np.ndarray
    peak: float

    @property
    def width(self) -> float:
        """float: Panel width."""
        return self.high - self.low

    def __call__(self, omega: np.ndarray) -> np.ndarray:
        mapped = (2.0 * np.asarray(omega, dtype=float) - (self.low + self.high)) / (self.high - self.low)
        return chebyshev.chebval(mapped, self.coefficients)


def fit_panel(func: Callable[[np.ndarray], np.ndarray], low: float, high: float) -> ChebyshevPanel:
    """
    Interpolate a vectorised function at 16 Chebyshev points of the first kind.

    Parameters
    ----------
    func : Callable[[numpy.ndarray], numpy.ndarray]
        Vectorised function.
    low, high : float
        Panel edges.

    Returns
    -------
    ChebyshevPanel
        The interpolant.
    """
    nodes = chebyshev.chebpts1(CHEBYSHEV_DEGREE + 1)
    values = np.asarray(func(0.5 * (low + high) + 0.5 * (high - low) * nodes), dtype=float)
    coefficients = chebyshev.chebfit(nodes, values, CHEBYSHEV_DEGREE)
    return ChebyshevPanel(low, high, coefficients, float(np.max(np.abs(values))))


def adaptive_chebyshev(
    func: Callable[[np.ndarray], np.ndarray],
    edges: Sequence[float],
    rtol: float,
    min_width: float,
    max_panels: int = 20_000,
) -> tuple[ChebyshevPanel, ...]:
    """
    Piecewise Chebyshev interpolation refined by bisection.

    A panel is accepted once its three trailing coefficients are below
    ``rtol`` times the largest function value seen so far, or when it is
    narrower than ``min_width``.

    Parameters
    ----------
    func : Callable[[numpy.ndarray], numpy.ndarray]
        Vectorised function to interpolate.
    edges : Sequence[float]
        Initial panel edges, at least two.
    rtol : float
        Relative accuracy target.
    min_width : float
        Narrowest panel that is still bisected.
    max_panels : int, optional
        Hard cap on the number of panels.

    Returns
    -------
    tuple[ChebyshevPanel, ...]
        Panels covering [min(edges), max(edges)] in increasing order.
    """
    edges = sorted(set(float(edge) for edge in edges))
    stack = [fit_panel(func, low, high) for low, high in zip(edges[:-1], edges[1:])]
    scale = max((panel.peak for panel in stack), default=0.0)
    stack.reverse()

    accepted: list[ChebyshevPanel] = []
    capped = False
    while stack:
        panel = stack.pop()
        scale = max(scale, panel.peak)
        tail = float(np.max(np.abs(panel.coefficients[-3:])))
        if tail <= rtol * scale or panel.width <= min_width:
            accepted.append(panel)
            continue
        if len(accepted) + len(stack) >= max_panels:
            capped = True
            accepted.append(panel)
            continue
        middle = 0.5 * (panel.low + panel.high)
        stack.append(fit_panel(func, middle, panel.high))
        stack.append(fit_panel(func, panel.low, middle))

    if capped:
        LOGGER.warning("Chebyshev refinement stopped at the cap of %d panels", max_panels)
    LOGGER.debug("Chebyshev interpolation used %d panels on [%.6g, %.6g]", len(accepted), edges[0], edges[-1])
    return tuple(sorted(accepted, key=lambda item: item.low))


def graded_edges(low: float, high: float, breakpoints: Iterable[float], smallest: float) -> list[float]:
    """
    Panel edges refined geometrically (factor 2) towards every breakpoint.

    Parameters
    ----------
    low, high : float
        Interval to cover.
    breakpoints : Iterable[float]
        Points where the function varies fastest.
    smallest : float
        Width of the panels touching a breakpoint.

    Returns
    -------
    list[float]
        Sorted panel edges including ``low`` and ``high``.
    """
    anchors = sorted({low, high, *(point for point in breakpoints if low < point < high)})
    edges = set(anchors)
    for left, right in zip(anchors[:-1], anchors[1:]):
        middle = 0.5 * (left + right)
        step = smallest
        while left + step < middle:
            edges.add(left + step)
            edges.add(right - step)
            step *= 2.0
        edges.add(middle)
    return sorted(edges)


def panel_fourier(panels: Sequence[ChebyshevPanel], times: np.ndarray) -> np.ndarray:
    """
    Fourier integral of a piecewise Chebyshev function.

    Computes the integral of f(omega) * exp(-i omega t) over all panels for
    each t, with 16-point Gauss-Legendre sub-panels narrow enough that the
    phase changes by at most ten radians across each of them.

    Parameters
    ----------
    panels : Sequence[ChebyshevPanel]
        Interpolant of f.
    times : numpy.ndarray
        Non-negative times.

    Returns
    -------
    numpy.ndarray
        Complex transform at each time.
    """
    times = np.asarray(times, dtype=float)
    if not panels:
        return np.zeros(times.shape, dtype=complex)

    gl_nodes, gl_weights = legendre.leggauss(GAUSS_LEGENDRE_NODES)
    t_max = float(np.max(np.abs(times))) if times.size else 0.0

    node_blocks = []
    weight_blocks = []
    for panel in panels:
        pieces = max(1, math.ceil(panel.width * t_max / SUBPANEL_PHASE))
        cuts = np.linspace(panel.low, panel.high, pieces + 1)
        centres = 0.5 * (cuts[1:] + cuts[:-1])
        halves = 0.5 * np.diff(cuts)
        omega = (centres[:, None] + halves[:, None] * gl_nodes[None, :]).ravel()
        node_blocks.append(omega)
        weight_blocks.append((halves[:, None] * gl_weights[None, :]).ravel() * panel(omega))

    omega = np.concatenate(node_blocks)
    weighted = np.concatenate(weight_blocks)
    LOGGER.debug("Fourier transform over %d frequency nodes and %d times", omega.size, times.size)

    result = np.empty(times.shape, dtype=complex)
    block = max(1, FOURIER_BLOCK // omega.size)
    for start in range(0, times.size, block):
        chunk = times[start : start + block]
        result[start : start + block] = np.exp(-1j * np.outer(chunk, omega)) @ weighted
    return result

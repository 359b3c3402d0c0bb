"""
Numerical kernels shared by the geometry modules.

Finite differences on uniform grids, cumulative quadrature, fixed-step RK4 and
spline interpolation. All reductions run in a fixed order so results do not
depend on how callers parallelize.
"""
import logging
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.integrate import cumulative_simpson
from scipy.interpolate import CubicSpline, make_interp_spline, make_lsq_spline

logger = logging.getLogger(__name__)


# =============================================================================
# FINITE DIFFERENCE STENCILS
# =============================================================================

# Central stencils on offsets -2..2
_D1_CENTRAL = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_D2_CENTRAL = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0
_D3_CENTRAL = np.array([-1.0, 2.0, 0.0, -2.0, 1.0]) / 2.0

# Fourth-order one-sided stencils for the two samples nearest the left edge
_D1_EDGE = (
    np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / 12.0,
    np.array([-3.0, -10.0, 18.0, -6.0, 1.0]) / 12.0,
)
_D2_EDGE = (
    np.array([45.0, -154.0, 214.0, -156.0, 61.0, -10.0]) / 12.0,
    np.array([10.0, -15.0, -4.0, 14.0, -6.0, 1.0]) / 12.0,
)


def _central(values: np.ndarray, weights: np.ndarray) -> np.ndarray:
    n = len(values)
    out = np.full(values.shape, np.nan)
    acc = np.zeros_like(values[2:n - 2])
    for offset, weight in zip(range(-2, 3), weights):
        if weight != 0.0:
            acc = acc + weight * values[2 + offset:n - 2 + offset]
    out[2:n - 2] = acc
    return out


def _fill_edges(out: np.ndarray, values: np.ndarray, stencils, odd: bool) -> None:
    flipped = values[::-1]
    sign = -1.0 if odd else 1.0
    for index, weights in enumerate(stencils):
        width = len(weights)
        out[index] = np.tensordot(weights, values[:width], axes=(0, 0))
        out[-1 - index] = sign * np.tensordot(weights, flipped[:width], axes=(0, 0))


def first_derivative(values: np.ndarray, h: float) -> np.ndarray:
    """Fourth-order first derivative along axis 0, full length."""
    values = np.asarray(values, dtype=float)
    out = _central(values, _D1_CENTRAL)
    _fill_edges(out, values, _D1_EDGE, odd=True)
    return out / h


def second_derivative(values: np.ndarray, h: float) -> np.ndarray:
    """Fourth-order second derivative along axis 0, full length."""
    values = np.asarray(values, dtype=float)
    out = _central(values, _D2_CENTRAL)
    _fill_edges(out, values, _D2_EDGE, odd=False)
    return out / h ** 2


def third_derivative(values: np.ndarray, h: float) -> np.ndarray:
    """Second-order central third derivative; the two edge samples on each side are NaN."""
    values = np.asarray(values, dtype=float)
    return _central(values, _D3_CENTRAL) / h ** 3


def derivatives(values: np.ndarray, h: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """First, second and third derivatives of uniformly sampled values."""
    return first_derivative(values, h), second_derivative(values, h), third_derivative(values, h)


def cross(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise det(a, b) of (n, 2) arrays."""
    return a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]


def interior(values: np.ndarray, trim: int) -> np.ndarray:
    return values[trim:len(values) - trim]


# =============================================================================
# QUADRATURE AND ODE INTEGRATION
# =============================================================================

def cumulative_integral_on(values: np.ndarray, params: np.ndarray) -> np.ndarray:
    """Composite Simpson cumulative integral on an arbitrary increasing grid."""
    return cumulative_simpson(np.asarray(values, dtype=float), x=np.asarray(params, dtype=float),
                              axis=0, initial=0.0)


def smoothing_spline(params: np.ndarray, values: np.ndarray, intervals: int, order: int = 5):
    """
    Least-squares spline with `intervals` equal knot spans.

    Falls back to the interpolating spline when there are fewer than two
    samples per span. Either way the result is a BSpline that can be
    differentiated or integrated exactly.
    """
    params = np.asarray(params, dtype=float)
    values = np.asarray(values, dtype=float)
    if len(params) < 2 * intervals + order:
        return make_interp_spline(params, values, k=order, axis=0)
    inner = np.linspace(params[0], params[-1], intervals + 1)[1:-1]
    knots = np.concatenate([np.repeat(params[0], order + 1), inner, np.repeat(params[-1], order + 1)])
    return make_lsq_spline(params, values, knots, k=order, axis=0)


def spline_cumulative_integral(params: np.ndarray, values: np.ndarray, intervals: int) -> np.ndarray:
    """Cumulative integral of a smoothing spline through the samples, starting at 0."""
    params = np.asarray(params, dtype=float)
    antiderivative = smoothing_spline(params, values, intervals).antiderivative()
    return antiderivative(params) - antiderivative(params[0])


def rk4(rhs: Callable[[float, np.ndarray], np.ndarray],
        y0: np.ndarray,
        grid: np.ndarray,
        substeps: int = 8) -> np.ndarray:
    """
    Fixed-step classical Runge-Kutta.

    Args:
        rhs: f(t, y) returning dy/dt
        y0: State at grid[0]
        grid: Output abscissae (monotone)
        substeps: Uniform RK4 steps per output interval

    Returns:
        Array of states, one row per grid point
    """
    grid = np.asarray(grid, dtype=float)
    states = np.zeros((len(grid), len(y0)))
    states[0] = y0
    y = np.array(y0, dtype=float)
    for i in range(len(grid) - 1):
        t = grid[i]
        dt = (grid[i + 1] - grid[i]) / substeps
        for _ in range(substeps):
            k1 = rhs(t, y)
            k2 = rhs(t + dt / 2, y + 0.5 * dt * k1)
            k3 = rhs(t + dt / 2, y + 0.5 * dt * k2)
            k4 = rhs(t + dt, y + dt * k3)
            y = y + (1 / 6) * dt * (k1 + 2 * k2 + 2 * k3 + k4)
            t = t + dt
        states[i + 1] = y
    return states


# =============================================================================
# INTERPOLATION
# =============================================================================

def cubic_resample(params: np.ndarray, values: np.ndarray, new_params: np.ndarray,
                   periodic: bool = False) -> np.ndarray:
    """Natural (or periodic) cubic spline evaluated at new_params."""
    bc_type = "periodic" if periodic else "natural"
    values = np.asarray(values, dtype=float)
    if periodic:
        values = values.copy()
        values[-1] = values[0]
    spline = CubicSpline(params, values, axis=0, bc_type=bc_type)
    return spline(new_params)


def smooth_resample(params: np.ndarray, values: np.ndarray, new_params: np.ndarray,
                    order: int = 5) -> np.ndarray:
    """
    High-order interpolating spline evaluated at new_params.

    Used when third derivatives of the resampled data are needed.
    """
    spline = make_interp_spline(np.asarray(params, dtype=float), np.asarray(values, dtype=float),
                                k=order, axis=0)
    return spline(np.asarray(new_params, dtype=float))


def clip_to_range(new_params: np.ndarray, params: np.ndarray) -> np.ndarray:
    """Pin the ends of a derived grid onto the source range (rounding guard)."""
    new_params = np.array(new_params, dtype=float)
    new_params[0] = max(new_params[0], params[0])
    new_params[-1] = min(new_params[-1], params[-1])
    return new_params


# =============================================================================
# SIGN AND GRID HELPERS
# =============================================================================

def sign_change_indices(values: np.ndarray) -> np.ndarray:
    """Indices i with values[i] * values[i+1] < 0."""
    values = np.asarray(values, dtype=float)
    return np.nonzero(values[:-1] * values[1:] < 0)[0]


def shift_steps(eps: float, h: float, rtol: float = 1e-6) -> Optional[int]:
    """
    Number of grid steps in a shift.

    Returns None when eps is not an integer multiple of h.
    """
    steps = int(round(eps / h))
    if abs(steps * h - eps) > rtol * h:
        return None
    return steps


def snap_to_grid(eps_values, h: float) -> np.ndarray:
    """Round shifts to the nearest grid multiples, dropping duplicates, in order."""
    eps_values = [float(e) for e in eps_values]
    snapped = []
    for eps in eps_values:
        value = round(eps / h) * h
        if not any(abs(value - s) < 0.5 * h for s in snapped):
            snapped.append(value)
    if len(snapped) != len(eps_values):
        logger.debug(f"Shift grid collapsed to {len(snapped)} values after snapping")
    return np.array(snapped, dtype=float)

"""
Reparametrization and curvature estimation in the three Klein geometries.

Every estimator works on a uniform parameter grid: curves sampled on a
non-uniform grid are first resampled with a quintic interpolating spline.
Curvature profiles drop `stencil_trim` samples at each end, where the
one-sided stencils are less accurate.
"""
import logging
from typing import Optional, Tuple

import numpy as np

from config import get_numerics, get_tolerances
from models.curve import (
    MIN_SAMPLES,
    CurvatureProfile,
    CurvatureRoute,
    Geometry,
    ParamKind,
    ReparamOptions,
    SampledCurve,
)
from models.errors import (
    DegenerateIntegrand,
    DegenerateSpeed,
    InvalidSpec,
    NegativeCurvatureOnEuclideanRoute,
    SignChange,
    TooFewSamples,
    VanishingCurvature,
)

from . import numerics

logger = logging.getLogger(__name__)

REPARAM_TARGETS = (ParamKind.ARC_LENGTH, ParamKind.TURNING_ANGLE, ParamKind.EQUIAFFINE)


# =============================================================================
# GRID HELPERS
# =============================================================================

def ensure_uniform(curve: SampledCurve) -> SampledCurve:
    """Return the curve itself when its grid is uniform, else a quintic resampling."""
    if curve.is_uniform():
        return curve
    logger.debug(f"Resampling {len(curve)} non-uniform samples onto a uniform grid")
    grid = np.linspace(curve.params[0], curve.params[-1], len(curve))
    points = numerics.smooth_resample(curve.params, curve.points, grid)
    return SampledCurve(grid, points, curve.kind, curve.meta)


def curve_derivatives(curve: SampledCurve) -> Tuple[float, np.ndarray, np.ndarray]:
    """Step plus first and second derivatives of the points (curve must be uniform)."""
    h = curve.step
    return h, numerics.first_derivative(curve.points, h), numerics.second_derivative(curve.points, h)


def _speed(d1: np.ndarray) -> np.ndarray:
    return np.hypot(d1[:, 0], d1[:, 1])


def _trimmed_profile(curve: SampledCurve, kappa: np.ndarray, geometry: Geometry,
                     params: Optional[np.ndarray] = None, **meta) -> CurvatureProfile:
    trim = get_numerics().stencil_trim
    params = curve.params if params is None else params
    return CurvatureProfile(
        numerics.interior(params, trim),
        numerics.interior(kappa, trim),
        geometry,
        curve.kind,
        meta,
    )


def check_integrand(values: np.ndarray, what: str) -> None:
    """
    Validate the integrand defining a parameter.

    Raises:
        DegenerateIntegrand: All values (or any single value) below the floor
        SignChange: Consecutive samples of opposite sign
    """
    floor = get_tolerances().integrand_floor
    magnitude = np.abs(values)
    if magnitude.max() < floor:
        raise DegenerateIntegrand(f"{what} vanishes on the whole domain", {"max": float(magnitude.max())})
    changes = numerics.sign_change_indices(values)
    if len(changes):
        raise SignChange(
            f"{what} changes sign",
            {"index": int(changes[0]), "count": int(len(changes))},
        )
    if magnitude.min() < floor:
        index = int(np.argmin(magnitude))
        raise DegenerateIntegrand(
            f"{what} falls below the floor", {"index": index, "value": float(values[index])}
        )


# =============================================================================
# REPARAMETRIZATION
# =============================================================================

def _integrand(curve: SampledCurve, target: ParamKind) -> np.ndarray:
    _, d1, d2 = curve_derivatives(curve)
    speed = _speed(d1)
    if target == ParamKind.ARC_LENGTH:
        return speed
    det = numerics.cross(d1, d2)
    if target == ParamKind.TURNING_ANGLE:
        if speed.min() < get_tolerances().speed_floor:
            raise DegenerateSpeed("Speed vanishes; turning angle undefined")
        return det / speed ** 2
    return np.cbrt(det)


def _orient(curve: SampledCurve, target: ParamKind) -> Tuple[SampledCurve, np.ndarray, bool]:
    """Integrand for target; curves with negative integrand everywhere are reversed."""
    values = _integrand(curve, target)
    check_integrand(values, f"{target.value} integrand")
    if target != ParamKind.ARC_LENGTH and values[0] < 0:
        logger.debug(f"Reversing orientation before {target.value} reparametrization")
        curve = curve.reversed()
        values = _integrand(curve, target)
        return curve, values, True
    return curve, values, False


def turning_angle(curve: SampledCurve, base: float = 0.0) -> np.ndarray:
    """
    Signed turning angle at each sample of a uniform curve, starting at base.

    Unlike reparametrize, the orientation of the curve is kept.
    """
    curve = ensure_uniform(curve)
    values = _integrand(curve, ParamKind.TURNING_ANGLE)
    intervals = get_numerics().integrand_spline_intervals
    return base + numerics.spline_cumulative_integral(curve.params, values, intervals)


def reparametrize(curve: SampledCurve, target: ParamKind,
                  options: Optional[ReparamOptions] = None) -> SampledCurve:
    """
    Resample a curve in arc length, turning angle or equiaffine arc length.

    The new parameter integrates |g_t|, kappa^E |g_t| or det(g_t, g_tt)^(1/3)
    from the configured base (arc length always starts at 0). The integrand is
    replaced by a quintic least-squares spline and integrated exactly. Points
    are then interpolated onto a uniform grid of the new parameter.

    Args:
        curve: Input curve
        target: ArcLength, TurningAngle or Equiaffine
        options: Base value and output sample count

    Returns:
        Curve of kind `target`; meta records whether the orientation was flipped

    Raises:
        SignChange, DegenerateIntegrand, TooFewSamples, InvalidSpec
    """
    if target not in REPARAM_TARGETS:
        raise InvalidSpec(
            f"Cannot reparametrize to {target.value}",
            {"allowed": [k.value for k in REPARAM_TARGETS]},
        )
    options = options or ReparamOptions()
    samples = options.samples or len(curve)
    if samples < MIN_SAMPLES:
        raise TooFewSamples(f"Need at least {MIN_SAMPLES} output samples", {"samples": samples})

    uniform = ensure_uniform(curve)
    oriented, values, flipped = _orient(uniform, target)
    base = 0.0 if target == ParamKind.ARC_LENGTH else options.base
    intervals = get_numerics().integrand_spline_intervals
    new_params = base + numerics.spline_cumulative_integral(oriented.params, values, intervals)
    if np.any(np.diff(new_params) <= 0):
        raise DegenerateIntegrand(f"{target.value} parameter is not strictly increasing")

    grid = np.linspace(new_params[0], new_params[-1], samples)
    points = numerics.smooth_resample(new_params, oriented.points, grid)

    meta = dict(curve.meta)
    meta.update({"reparametrized_from": curve.kind.value, "orientation_flipped": flipped})
    return SampledCurve(grid, points, target, meta)


def resample_uniform(curve: SampledCurve, n: int) -> SampledCurve:
    """
    Cubic-spline resampling onto n uniform parameter values over the same span.

    Natural end conditions, or periodic ones when the curve is closed.
    """
    if n < MIN_SAMPLES:
        raise TooFewSamples(f"Need at least {MIN_SAMPLES} samples", {"samples": n})
    grid = np.linspace(curve.params[0], curve.params[-1], n)
    points = numerics.cubic_resample(curve.params, curve.points, grid, periodic=curve.is_closed())
    return SampledCurve(grid, points, curve.kind, curve.meta)


# =============================================================================
# CURVATURES
# =============================================================================

def euclidean_full(curve: SampledCurve) -> Tuple[float, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Full-length kappa^E together with step, speed and the point derivatives."""
    h, d1, d2 = curve_derivatives(curve)
    speed = _speed(d1)
    if speed.min() < get_tolerances().speed_floor:
        index = int(np.argmin(speed))
        raise DegenerateSpeed("Speed below floor", {"index": index, "value": float(speed[index])})
    kappa = numerics.cross(d1, d2) / speed ** 3
    return h, speed, kappa, d1, d2


def euclidean_curvature(curve: SampledCurve) -> CurvatureProfile:
    """kappa^E = det(g_t, g_tt) / |g_t|^3 on the stencil interior."""
    curve = ensure_uniform(curve)
    _, _, kappa, _, _ = euclidean_full(curve)
    return _trimmed_profile(curve, kappa, Geometry.EUCLIDEAN)


def arc_length_derivatives(curve: SampledCurve) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    Full-length kappa^E with its first and second arc-length derivatives.

    The t-derivatives of kappa are taken on a quintic least-squares spline
    of kappa(t), not by differencing kappa.

    Returns:
        (kappa, kappa_s, kappa_ss, speed)
    """
    _, speed, kappa, d1, d2 = euclidean_full(curve)
    spline = numerics.smoothing_spline(curve.params, kappa, get_numerics().curvature_spline_intervals)
    kappa_t = spline.derivative(1)(curve.params)
    kappa_tt = spline.derivative(2)(curve.params)
    speed_t = np.einsum("ij,ij->i", d1, d2) / speed
    kappa_s = kappa_t / speed
    kappa_ss = (kappa_tt * speed - kappa_t * speed_t) / speed ** 3
    return kappa, kappa_s, kappa_ss, speed


def _require_nonvanishing(kappa: np.ndarray) -> None:
    interior = numerics.interior(kappa, get_numerics().stencil_trim)
    floor = get_tolerances().integrand_floor
    changes = numerics.sign_change_indices(interior)
    if len(changes) or np.abs(interior).min() < floor:
        raise VanishingCurvature(
            "Euclidean curvature vanishes; similarity curvature is singular",
            {"min_abs": float(np.abs(interior).min()), "sign_changes": int(len(changes))},
        )


def similarity_curvature(curve: SampledCurve) -> CurvatureProfile:
    """kappa^sim = kappa^E_s / (kappa^E)^2 on the stencil interior."""
    curve = ensure_uniform(curve)
    kappa, kappa_s, _, _ = arc_length_derivatives(curve)
    _require_nonvanishing(kappa)
    return _trimmed_profile(curve, kappa_s / kappa ** 2, Geometry.SIMILARITY)


def _equiaffine_from_euclidean(curve: SampledCurve) -> CurvatureProfile:
    _, d1, d2 = curve_derivatives(curve)
    check_integrand(numerics.cross(d1, d2), "det(g_t, g_tt)")
    kappa, kappa_s, kappa_ss, _ = arc_length_derivatives(curve)
    if kappa.max() < 0:
        raise NegativeCurvatureOnEuclideanRoute(
            "Euclidean route needs positive curvature; reverse the curve or use the equiaffine route"
        )
    kappa_sa = (
        kappa ** (4.0 / 3.0)
        + (1.0 / 3.0) * kappa ** (-5.0 / 3.0) * kappa_ss
        - (5.0 / 9.0) * kappa ** (-8.0 / 3.0) * kappa_s ** 2
    )
    return _trimmed_profile(curve, kappa_sa, Geometry.EQUIAFFINE, route=CurvatureRoute.EUCLIDEAN.value)


def _equiaffine_direct(curve: SampledCurve) -> CurvatureProfile:
    if curve.kind == ParamKind.EQUIAFFINE:
        u_curve = curve
    else:
        u_curve = reparametrize(curve, ParamKind.EQUIAFFINE)
    h = u_curve.step
    d2 = numerics.second_derivative(u_curve.points, h)
    d3 = numerics.third_derivative(u_curve.points, h)
    kappa_sa = numerics.cross(d2, d3)
    return _trimmed_profile(
        u_curve,
        kappa_sa,
        Geometry.EQUIAFFINE,
        route=CurvatureRoute.EQUIAFFINE.value,
        orientation_flipped=bool(u_curve.meta.get("orientation_flipped", False)),
    )


def equiaffine_curvature(curve: SampledCurve,
                         route: CurvatureRoute = CurvatureRoute.EQUIAFFINE) -> CurvatureProfile:
    """
    Equiaffine curvature kappa^SA.

    The Euclidean route evaluates the closed formula in kappa^E and its
    arc-length derivatives, keeping the input parameter. The equiaffine route
    reparametrizes to u (unless the curve already is in u) and returns
    det(g_uu, g_uuu) against u.
    """
    curve = ensure_uniform(curve)
    if route == CurvatureRoute.EUCLIDEAN:
        return _equiaffine_from_euclidean(curve)
    return _equiaffine_direct(curve)

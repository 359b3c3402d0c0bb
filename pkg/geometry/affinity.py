"""
Self-affinity checks.

ESA: fit affine maps F(eps) with g(t + eps) = F(eps) g(t) over a grid of
shifts and test the one-parameter-group structure. MSA: ratio tests of
kappa^E and s_t under parameter shifts. Also the logarithmic curvature
graph, the turning-angle rate test and the shift-derivative identities.
"""
import logging
import math
from typing import Dict, Iterable, Optional, Tuple

import numpy as np
from scipy.stats import linregress

from config import get_numerics, get_tolerances
from models.affine import AffineMap2
from models.curve import ParamKind, SampledCurve
from models.family import LAC
from models.errors import (
    CurveGeometryError,
    DegenerateLCG,
    DegenerateSpeed,
    InsufficientOverlap,
    InvalidCurve,
    InvalidSpec,
    MissingSpeedData,
    NonpositiveU,
    OffGridShift,
    SingularNormalEquations,
    VanishingCurvature,
)
from models.reports import (
    AffineGroup,
    ESAReport,
    LCGData,
    MSAReport,
    ShiftDerivativeReport,
    ShiftFit,
    ThetaAffinityReport,
    Verdict,
)

from . import core, numerics
from .generators import lac_curvature, msa_arc_length

logger = logging.getLogger(__name__)


# =============================================================================
# AFFINE SHIFT FITS
# =============================================================================

def _require_uniform(curve: SampledCurve) -> None:
    if not curve.is_uniform():
        raise InvalidCurve("Shift tests need a uniform parameter grid; resample first")


def _steps(curve: SampledCurve, eps: float) -> int:
    steps = numerics.shift_steps(eps, curve.step)
    if steps is None:
        raise OffGridShift(
            "Shift is not a multiple of the grid step",
            {"eps": eps, "step": curve.step},
        )
    return steps


def _overlap(points: np.ndarray, steps: int) -> Tuple[np.ndarray, np.ndarray]:
    """Pairs (g(t_i), g(t_i + eps)) for a shift of `steps` samples."""
    n = len(points)
    if steps >= 0:
        return points[:n - steps], points[steps:]
    return points[-steps:], points[:n + steps]


def _fit_steps(curve: SampledCurve, steps: int, group: AffineGroup) -> ShiftFit:
    eps = steps * curve.step
    if steps == 0:
        return ShiftFit(AffineMap2.identity(), 0.0, 1.0, 0.0, len(curve))

    overlap = len(curve) - abs(steps)
    if overlap < get_numerics().min_samples:
        raise InsufficientOverlap(
            "Too few overlapping samples for this shift",
            {"eps": eps, "overlap": overlap, "required": get_numerics().min_samples},
        )

    source, target = _overlap(curve.points, steps)
    source_mean, target_mean = source.mean(axis=0), target.mean(axis=0)
    centred_source = source - source_mean
    centred_target = target - target_mean

    normal = centred_source.T @ centred_source
    condition = np.linalg.cond(normal)
    if not np.isfinite(condition) or condition > get_tolerances().condition_limit:
        raise SingularNormalEquations(
            "Overlap points are (nearly) collinear",
            {"eps": eps, "condition": float(condition)},
        )
    linear = np.linalg.solve(normal, centred_source.T @ centred_target).T
    raw_det = float(np.linalg.det(linear))
    if group == AffineGroup.EQUIAFFINE:
        linear = linear / math.sqrt(abs(raw_det))
    translation = target_mean - linear @ source_mean

    affine_map = AffineMap2(linear, translation)
    mismatch = affine_map.apply(source) - target
    rms = math.sqrt(float(np.mean(np.sum(mismatch ** 2, axis=1))))
    residual = rms / curve.bbox_diagonal()
    return ShiftFit(affine_map, residual, raw_det, eps, overlap)


def fit_affine_shift(curve: SampledCurve, eps: float,
                     group: AffineGroup = AffineGroup.FULL_AFFINE) -> ShiftFit:
    """
    Least-squares affine map taking g(t) to g(t + eps) on the overlap.

    The equiaffine group rescales the fitted linear part to |det| = 1 and
    refits the translation; raw_det keeps the unnormalized determinant.

    Raises:
        OffGridShift, InsufficientOverlap, SingularNormalEquations
    """
    _require_uniform(curve)
    return _fit_steps(curve, _steps(curve, eps), group)


def _verdict(max_residual: float) -> Verdict:
    tolerances = get_tolerances()
    if max_residual < tolerances.esa_residual:
        return Verdict.ESA
    if max_residual < tolerances.esa_noisy:
        return Verdict.INCONCLUSIVE
    return Verdict.NOT_ESA


def esa_check(curve: SampledCurve, eps_grid: Iterable[float],
              group: AffineGroup = AffineGroup.FULL_AFFINE) -> ESAReport:
    """
    Fit F(eps) for each shift of the grid (0 is always added).

    composition_error is the worst ||F(e1 + e2) - F(e2) o F(e1)|| / ||F(e1 + e2)||
    (homogeneous Frobenius norms) over pairs of nonzero grid shifts, fitting
    F(e1 + e2) on demand. The generator is the central difference of the
    linear part at the smallest nonzero |eps|. det_rate is the slope of
    log |det F(eps)| against eps.
    """
    _require_uniform(curve)
    step_grid = sorted({_steps(curve, float(eps)) for eps in eps_grid} | {0})
    cache: Dict[int, ShiftFit] = {}

    def fit(steps: int) -> ShiftFit:
        if steps not in cache:
            cache[steps] = _fit_steps(curve, steps, group)
        return cache[steps]

    fits = [fit(steps) for steps in step_grid]
    eps_values = np.array([f.eps for f in fits])
    residuals = np.array([f.residual for f in fits])
    dets = np.array([f.raw_det for f in fits])

    composition_error = _composition_error(step_grid, fit)
    generator = _generator(step_grid, fit, curve.step)
    det_rate, det_r_squared = _det_rate(eps_values, dets)

    verdict = _verdict(float(residuals.max()))
    if verdict != Verdict.ESA:
        logger.warning(f"ESA check: verdict {verdict.value}, max residual {residuals.max():.3e}")
    return ESAReport(
        eps_grid=eps_values,
        maps=[f.affine_map for f in fits],
        residuals=residuals,
        dets=dets,
        generator=generator,
        det_rate=det_rate,
        det_r_squared=det_r_squared,
        composition_error=composition_error,
        verdict=verdict,
        group=group,
    )


def _composition_error(step_grid, fit) -> float:
    nonzero = [m for m in step_grid if m != 0]
    worst = 0.0
    for first in nonzero:
        for second in nonzero:
            try:
                combined = fit(first + second)
            except CurveGeometryError:
                continue
            composed = fit(second).affine_map.compose(fit(first).affine_map)
            reference = combined.affine_map.homogeneous()
            error = np.linalg.norm(reference - composed.homogeneous()) / np.linalg.norm(reference)
            worst = max(worst, float(error))
    return worst


def _extrapolated_generator(fit, small: int, large: Optional[int], h: float) -> np.ndarray:
    """
    Central difference of the fitted linear parts at +-small steps, with the
    eps^2 error term cancelled against a second pair at +-large steps.
    """
    def central(steps: int) -> np.ndarray:
        return (fit(steps).affine_map.linear - fit(-steps).affine_map.linear) / (2.0 * steps * h)

    if large is None:
        return central(small)
    return (large ** 2 * central(small) - small ** 2 * central(large)) / (large ** 2 - small ** 2)


def _generator(step_grid, fit, h: float) -> np.ndarray:
    nonzero = sorted({abs(m) for m in step_grid if m != 0})
    if not nonzero:
        return np.zeros((2, 2))
    large = nonzero[1] if len(nonzero) > 1 else None
    return _extrapolated_generator(fit, nonzero[0], large, h)


def _det_rate(eps_values: np.ndarray, dets: np.ndarray) -> Tuple[float, float]:
    log_dets = np.log(np.abs(dets))
    if len(eps_values) < 2 or np.ptp(log_dets) < 1e-14:
        return 0.0, 1.0
    fit = linregress(eps_values, log_dets)
    return float(fit.slope), float(fit.rvalue ** 2)


# =============================================================================
# ESA PARAMETER
# =============================================================================

def esa_parameter_transform(curve: SampledCurve, k: float, l: float = 0.0) -> SampledCurve:
    """
    Resample an equiaffine-parametrized curve uniformly in t = (log u - l) / k.

    Raises:
        InvalidSpec: Curve not in u, or k = 0
        NonpositiveU: Some u <= 0
    """
    if curve.kind != ParamKind.EQUIAFFINE:
        raise InvalidSpec("ESA parameter transform needs an equiaffine-parametrized curve",
                          {"kind": curve.kind.value})
    if k == 0 or not math.isfinite(k):
        raise InvalidSpec("k must be finite and nonzero", {"k": k})
    if np.any(curve.params <= 0):
        raise NonpositiveU(
            "u must be positive for t = (log u - l) / k",
            {"min_u": float(curve.params.min())},
        )
    t = (np.log(curve.params) - l) / k
    points = curve.points
    if k < 0:
        t, points = t[::-1], points[::-1]
    grid = numerics.clip_to_range(np.linspace(t[0], t[-1], len(curve)), t)
    resampled = numerics.smooth_resample(t, points, grid)
    meta = dict(curve.meta)
    meta.update({"esa_k": k, "esa_l": l})
    return SampledCurve(grid, resampled, ParamKind.ESA_PARAM, meta)


# =============================================================================
# MIURA SELF-AFFINITY
# =============================================================================

def _ratio_error(values: np.ndarray, steps: int, expected: float, trim: int = 0) -> float:
    source, target = _overlap(values, steps)
    if trim:
        source, target = source[trim:len(source) - trim], target[trim:len(target) - trim]
    return float(np.max(np.abs(target / source - expected)) / expected)


def _closed_form_msa(law: dict, t: np.ndarray, alpha: float, eps_grid: np.ndarray) -> Tuple[float, float]:
    family = LAC(law["alpha"], law["xi"], law["eta"])
    kappa_law = lac_curvature(family)
    kappa_error = speed_error = 0.0
    for eps in eps_grid:
        s_now, speed_now = msa_arc_length(law, t)
        s_next, speed_next = msa_arc_length(law, t + eps)
        kappa_ratio = kappa_law(s_next) / kappa_law(s_now)
        kappa_error = max(kappa_error, float(np.max(np.abs(kappa_ratio - math.exp(eps))) / math.exp(eps)))
        expected = math.exp(-alpha * eps)
        speed_error = max(speed_error, float(np.max(np.abs(speed_next / speed_now - expected)) / expected))
    return kappa_error, speed_error


def _euclidean_for_msa(curve: SampledCurve):
    try:
        return core.euclidean_full(curve)
    except DegenerateSpeed as e:
        raise MissingSpeedData("Speed vanishes; s_t cannot be recovered", e.details) from e


def _law_mismatch(curve: SampledCurve, law: dict) -> float:
    """Largest relative deviation of the sampled |kappa^E| from kappa_ref e^t."""
    _require_uniform(curve)
    _, _, kappa, _, _ = _euclidean_for_msa(curve)
    expected = law["kappa_ref"] * np.exp(curve.params)
    deviation = np.abs(kappa) / expected - 1.0
    return float(np.max(np.abs(numerics.interior(deviation, get_numerics().stencil_trim))))


def _sampled_msa(curve: SampledCurve, alpha: float, eps_grid: np.ndarray) -> Tuple[float, float]:
    _require_uniform(curve)
    trim = get_numerics().stencil_trim
    _, speed, kappa, _, _ = _euclidean_for_msa(curve)
    if np.all(kappa < 0):
        kappa = -kappa
    if np.any(kappa <= 0):
        raise VanishingCurvature("MSA test needs positive curvature", {"min": float(kappa.min())})
    kappa_error = speed_error = 0.0
    for eps in eps_grid:
        steps = _steps(curve, eps)
        if len(curve) - abs(steps) - 2 * trim < get_numerics().min_samples:
            raise InsufficientOverlap("Shift leaves too few interior samples", {"eps": eps})
        kappa_error = max(kappa_error, _ratio_error(kappa, steps, math.exp(steps * curve.step), trim))
        speed_error = max(speed_error, _ratio_error(speed, steps, math.exp(-alpha * steps * curve.step), trim))
    return kappa_error, speed_error


def msa_check(curve: SampledCurve, alpha: float, eps_grid: Iterable[float]) -> MSAReport:
    """
    Miura self-affinity: kappa^E(t + eps) = e^eps kappa^E(t) and
    s_t(t + eps) = e^(-alpha eps) s_t(t).

    Curves produced by msa_parametrization carry their law in meta["msa"]
    and are checked in closed form (tolerance msa_closed_form), after the
    sampled kappa^E is confirmed to follow that law (tolerance msa_sampled).
    Other curves are checked on finite-difference estimates (tolerance
    msa_sampled).

    Raises:
        MissingSpeedData: Speed cannot be recovered from the samples
    """
    eps_values = np.array(sorted(set(float(e) for e in eps_grid) | {0.0}))
    tolerances = get_tolerances()
    law = curve.meta.get("msa")
    mismatch = None
    if law is not None:
        kappa_error, speed_error = _closed_form_msa(law, curve.params, alpha, eps_values)
        tolerance, closed_form = tolerances.msa_closed_form, True
        mismatch = _law_mismatch(curve, law)
        if mismatch >= tolerances.msa_sampled:
            logger.warning(f"MSA check: samples deviate from the recorded law by {mismatch:.3e}")
    else:
        kappa_error, speed_error = _sampled_msa(curve, alpha, eps_values)
        tolerance, closed_form = tolerances.msa_sampled, False
    verdict = kappa_error < tolerance and speed_error < tolerance
    if mismatch is not None:
        verdict = verdict and mismatch < tolerances.msa_sampled
    return MSAReport(
        alpha=alpha,
        kappa_ratio_error=kappa_error,
        speed_ratio_error=speed_error,
        verdict=verdict,
        closed_form=closed_form,
        eps_grid=eps_values.tolist(),
        law_mismatch=mismatch,
    )


# =============================================================================
# LOGARITHMIC CURVATURE GRAPH
# =============================================================================

def lcg(curve: SampledCurve) -> LCGData:
    """
    Points (-log kappa^E, log |kappa^E / kappa^E_s|) and their least-squares line.

    The slope estimates the LAC slope alpha. Clockwise curves are measured
    with |kappa^E|. A line flatter than `lcg_flat` (relative spread of the two coordinates)
    is reported with R^2 = 1.

    Raises:
        VanishingCurvature: kappa^E vanishes or changes sign
        DegenerateLCG: kappa^E_s vanishes (e.g. a circle)
    """
    curve = core.ensure_uniform(curve)
    trim = get_numerics().stencil_trim
    kappa, kappa_s, _, _ = core.arc_length_derivatives(curve)
    kappa, kappa_s = numerics.interior(kappa, trim), numerics.interior(kappa_s, trim)
    if len(numerics.sign_change_indices(kappa)) or np.abs(kappa).min() < get_tolerances().integrand_floor:
        raise VanishingCurvature("LCG needs nonvanishing curvature")
    if kappa[0] < 0:
        kappa, kappa_s = -kappa, -kappa_s

    ratio = np.abs(kappa_s) / kappa ** 2
    if ratio.min() < get_tolerances().lcg_floor:
        index = int(np.argmin(ratio))
        raise DegenerateLCG(
            "Curvature derivative vanishes; the LCG is undefined",
            {"index": index, "relative_derivative": float(ratio[index])},
        )
    points = np.column_stack([-np.log(kappa), np.log(kappa / np.abs(kappa_s))])
    fit = linregress(points[:, 0], points[:, 1])
    r_squared = float(fit.rvalue ** 2)
    # Horizontal line (alpha = 0): r is undefined
    if np.std(points[:, 1]) <= get_tolerances().lcg_flat * np.std(points[:, 0]):
        r_squared = 1.0
    return LCGData(points, float(fit.slope), float(fit.intercept), r_squared)


# =============================================================================
# TURNING-ANGLE RATE
# =============================================================================

def theta_affinity_check(curve: SampledCurve, alpha: float,
                         eps_grid: Iterable[float]) -> ThetaAffinityReport:
    """
    Regress theta(t + eps) on theta(t) for each shift.

    On an MSA-parametrized LAC of slope alpha, theta_t scales by
    e^((1 - alpha) eps) under t -> t + eps, so the slope must be that factor.
    """
    curve = core.ensure_uniform(curve)
    theta = core.turning_angle(curve)
    eps_values, slopes, intercepts = [], [], []
    for eps in sorted(set(float(e) for e in eps_grid) | {0.0}):
        steps = _steps(curve, eps)
        if steps == 0:
            slope, intercept = 1.0, 0.0
        else:
            if len(curve) - abs(steps) < get_numerics().min_samples:
                raise InsufficientOverlap("Too few overlapping samples", {"eps": eps})
            source, target = _overlap(theta, steps)
            fit = linregress(source, target)
            slope, intercept = float(fit.slope), float(fit.intercept)
        eps_values.append(steps * curve.step)
        slopes.append(slope)
        intercepts.append(intercept)

    eps_values = np.array(eps_values)
    expected = np.exp((1.0 - alpha) * eps_values)
    slopes = np.array(slopes)
    rate_error = float(np.max(np.abs(slopes - expected) / expected))
    return ThetaAffinityReport(
        alpha=alpha,
        eps_grid=eps_values,
        slopes=slopes,
        intercepts=np.array(intercepts),
        expected=expected,
        rate_error=rate_error,
        verdict=rate_error < get_tolerances().theta_rate,
    )


# =============================================================================
# SHIFT-DERIVATIVE IDENTITIES
# =============================================================================

def estimate_generator(curve: SampledCurve, steps: int = 1,
                       group: AffineGroup = AffineGroup.FULL_AFFINE) -> np.ndarray:
    """Estimate of dF/deps at 0 from shifts of +-steps and +-2 steps samples."""
    _require_uniform(curve)
    return _extrapolated_generator(lambda m: _fit_steps(curve, m, group), steps, 2 * steps, curve.step)


def shift_derivative_check(curve: SampledCurve, k: float, l: float = 0.0,
                           generator: Optional[np.ndarray] = None) -> ShiftDerivativeReport:
    """
    Check g_uu = (1/u_t) A g_u - (u_tt/u_t^2) g_u and g_ttt = A^2 g_t for a
    curve in its ESA parameter t with u = exp(k t + l).

    Args:
        curve: Curve of kind ESAParam on a uniform grid
        k, l: Parameter map used to produce t
        generator: A = dF/deps at 0; estimated from one-step shifts when omitted
    """
    _require_uniform(curve)
    trim = get_numerics().stencil_trim
    a = estimate_generator(curve) if generator is None else np.asarray(generator, dtype=float)

    h = curve.step
    g_t, g_tt, g_ttt = numerics.derivatives(curve.points, h)
    u = np.exp(k * curve.params + l)
    u_t = (k * u)[:, None]
    u_tt = (k * k * u)[:, None]

    g_u = g_t / u_t
    g_uu = (g_tt - u_tt * g_u) / u_t ** 2
    predicted_uu = (g_u @ a.T) / u_t - (u_tt / u_t ** 2) * g_u
    predicted_ttt = g_t @ (a @ a).T

    def relative(lhs: np.ndarray, rhs: np.ndarray) -> float:
        lhs, rhs = numerics.interior(lhs, trim), numerics.interior(rhs, trim)
        scale = np.max(np.linalg.norm(lhs, axis=1))
        return float(np.max(np.linalg.norm(lhs - rhs, axis=1)) / scale)

    second = relative(g_uu, predicted_uu)
    third = relative(g_ttt, predicted_ttt)
    tolerances = get_tolerances()
    k_from_trace = float(np.trace(a) / 3.0)
    return ShiftDerivativeReport(
        second_order_error=second,
        third_order_error=third,
        k_used=k,
        k_from_trace=k_from_trace,
        passed=second < tolerances.shift_second_order and third < tolerances.shift_third_order,
    )

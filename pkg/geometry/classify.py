"""
Classification of curves with extendable self-affinity.

The curvature route fits kappa^SA(u) = +-(xi u + eta)^-2 to a measured
equiaffine curvature profile and dispatches on (sign, |xi|). Noisy samples
defeat third-derivative estimates, so when that fit fails the classifier
falls back to fitting the points themselves against the closed-form
antiderivatives of the Euler-equation basis (and of constant-curvature
bases for conics) by variable projection.
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.optimize import minimize, minimize_scalar
from scipy.stats import linregress

from config import get_tolerances
from models.classes import (
    ClassLabel,
    Conic,
    CurveClass,
    ESACoefficients,
    OmegaDirection,
)
from models.curve import CurvatureProfile, CurvatureRoute, Geometry, ParamKind, SampledCurve
from models.errors import InvalidSpec, MixedSign, PoleInput, PoorFit, Unclassifiable
from models.family import Sign

from .core import equiaffine_curvature, reparametrize

logger = logging.getLogger(__name__)

DOUBLE_ROOT_XI = 2.0
LOG_GRAPH_OMEGA = 1.5


# =============================================================================
# OMEGA / ALPHA
# =============================================================================

def omega_alpha(direction: OmegaDirection, value: float) -> float:
    """
    Convert between the power-graph exponent alpha and omega.

    omega = (3/2)(1 - alpha)/(1 + alpha), alpha = (3 - 2 omega)/(3 + 2 omega)

    Raises:
        PoleInput: alpha = -1 or omega = -3/2
    """
    if direction == OmegaDirection.ALPHA_TO_OMEGA:
        if value == -1.0:
            raise PoleInput("alpha = -1 has no omega (hyperbola)", {"alpha": value})
        return 1.5 * (1.0 - value) / (1.0 + value)
    if value == -1.5:
        raise PoleInput("omega = -3/2 has no alpha", {"omega": value})
    return (3.0 - 2.0 * value) / (3.0 + 2.0 * value)


# =============================================================================
# CURVATURE ROUTE
# =============================================================================

def fit_esa_curvature(profile: CurvatureProfile) -> ESACoefficients:
    """
    Recover (sign, xi, eta) of kappa^SA = +-(xi u + eta)^-2.

    Constant profiles return sign ZERO with the constant stored in eta.
    Otherwise |kappa^SA|^(-1/2) = xi u + eta is fitted by least squares on
    the dominant-sign samples (xi u + eta > 0 on the profile).

    Raises:
        MixedSign: More than `mixed_sign_fraction` of samples have the minority sign
        PoorFit: Relative RMSE of the reconstructed curvature above `poor_fit_rmse`
    """
    if profile.geometry != Geometry.EQUIAFFINE:
        raise InvalidSpec("Expected an equiaffine curvature profile", {"geometry": profile.geometry.value})
    tolerances = get_tolerances()
    u, kappa = profile.params, profile.kappa
    mean = float(np.mean(kappa))
    if np.max(np.abs(kappa)) < tolerances.zero_curvature_abs or (
        mean != 0.0 and np.std(kappa) / abs(mean) < tolerances.constant_curvature_rel
    ):
        return ESACoefficients(Sign.ZERO, 0.0, mean, float(np.std(kappa) / max(abs(mean), 1e-300)))

    positive = kappa > 0
    minority = min(positive.mean(), 1.0 - positive.mean())
    if minority > tolerances.mixed_sign_fraction:
        raise MixedSign(
            "Equiaffine curvature changes sign",
            {"minority_fraction": float(minority)},
        )
    sign = Sign.PLUS if positive.mean() >= 0.5 else Sign.MINUS
    mask = positive if sign == Sign.PLUS else ~positive

    fit = linregress(u[mask], np.abs(kappa[mask]) ** -0.5)
    xi, eta = float(fit.slope), float(fit.intercept)
    predicted = sign.factor * (xi * u[mask] + eta) ** -2.0
    rmse = float(np.sqrt(np.mean((predicted - kappa[mask]) ** 2)) / np.sqrt(np.mean(kappa[mask] ** 2)))
    if rmse > tolerances.poor_fit_rmse:
        raise PoorFit("Curvature does not follow +-(xi u + eta)^-2", {"fit_rmse": rmse})
    return ESACoefficients(sign, xi, eta, rmse)


def _conic(constant: float) -> Conic:
    if abs(constant) < get_tolerances().zero_curvature_abs:
        return Conic.PARABOLA
    return Conic.ELLIPSE if constant > 0 else Conic.HYPERBOLA


def _hyperbola(coefficients: ESACoefficients, method: str) -> ClassLabel:
    constant = coefficients.sign.factor * coefficients.eta ** -2.0 if coefficients.eta else 0.0
    quadratic = ESACoefficients(Sign.ZERO, 0.0, constant, coefficients.fit_rmse)
    return ClassLabel(CurveClass.QUADRATIC, quadratic, conic=Conic.HYPERBOLA, method=method)


def _power_graph(coefficients: ESACoefficients, omega: float, method: str) -> ClassLabel:
    """PowerGraph, or Quadratic(Hyperbola) when alpha is within `alpha_boundary` of -1."""
    alpha = omega_alpha(OmegaDirection.OMEGA_TO_ALPHA, omega)
    if abs(alpha + 1.0) <= get_tolerances().alpha_boundary:
        return _hyperbola(coefficients, method)
    return ClassLabel(CurveClass.POWER_GRAPH, coefficients, omega=omega, alpha=alpha, method=method)


def label_from_coefficients(coefficients: ESACoefficients, method: str = "curvature") -> ClassLabel:
    """
    Dispatch table from fitted coefficients to one of the five classes.

    Boundary classes (XLogXGraph, LogGraph) win inside their tolerance bands.
    A power law within `alpha_boundary` of alpha = -1 is the hyperbola y = 1/x.
    """
    tolerances = get_tolerances()
    if coefficients.sign == Sign.ZERO:
        return ClassLabel(CurveClass.QUADRATIC, coefficients, conic=_conic(coefficients.eta), method=method)

    xi = abs(coefficients.xi)
    if xi == 0:
        raise Unclassifiable("xi = 0 with nonzero sign", coefficients.to_dict())
    band = tolerances.xi_boundary_rel * xi
    if coefficients.sign == Sign.PLUS and abs(xi - DOUBLE_ROOT_XI) <= band:
        return ClassLabel(CurveClass.XLOGX_GRAPH, coefficients, omega=0.0, method=method)

    omega = math.sqrt(abs(xi ** -2 - coefficients.sign.factor * 0.25))
    if coefficients.sign == Sign.PLUS and xi < DOUBLE_ROOT_XI:
        return ClassLabel(CurveClass.LOG_SPIRAL, coefficients, omega=omega, method=method)
    if abs(omega - LOG_GRAPH_OMEGA) <= tolerances.omega_boundary:
        return ClassLabel(CurveClass.LOG_GRAPH, coefficients, omega=omega, method=method)
    return _power_graph(coefficients, omega, method)


# =============================================================================
# REPRESENTATION FIT
# =============================================================================

_DISCRIMINANT_FLOOR = 1e-12


def _antiderivative(p: complex, log_v: np.ndarray) -> np.ndarray:
    """(v^p - 1)/p, continuous at p = 0 where it is log v."""
    if abs(p) < 1e-12:
        return log_v.astype(complex)
    return np.expm1(p * log_v) / p


def euler_span(discriminant: float, v: np.ndarray) -> np.ndarray:
    """
    Columns (1, phi1, phi2) spanning the coordinates of every curve with
    kappa^SA = (1/4 - D) v^-2, continuous in D through the double root.
    """
    if abs(discriminant) < _DISCRIMINANT_FLOOR:
        discriminant = _DISCRIMINANT_FLOOR
    omega = np.sqrt(complex(discriminant))
    log_v = np.log(v)
    upper = _antiderivative(1.5 + omega, log_v)
    lower = _antiderivative(1.5 - omega, log_v)
    phi1 = ((upper + lower) / 2.0).real
    phi2 = ((upper - lower) / (2.0 * omega)).real
    return np.column_stack([np.ones_like(v), phi1, phi2])


def conic_span(curvature: float, u: np.ndarray) -> np.ndarray:
    """Columns (1, sin(sqrt(c) u)/sqrt(c), (1 - cos(sqrt(c) u))/c), continuous at c = 0."""
    if abs(curvature) < _DISCRIMINANT_FLOOR:
        curvature = _DISCRIMINANT_FLOOR
    root = np.sqrt(complex(curvature))
    first = (np.sin(root * u) / root).real
    second = (2.0 * np.sin(root * u / 2.0) ** 2 / curvature).real
    return np.column_stack([np.ones_like(u), first, second])


def _projection_residual(design: np.ndarray, points: np.ndarray, scale: float) -> float:
    norms = np.linalg.norm(design, axis=0)
    norms[norms == 0] = 1.0
    scaled = design / norms
    coefficients, *_ = np.linalg.lstsq(scaled, points, rcond=None)
    mismatch = scaled @ coefficients - points
    return math.sqrt(float(np.mean(np.sum(mismatch ** 2, axis=1)))) / scale


@dataclass
class RepresentationFit:
    """
    Best point fit of one candidate model.

    For Euler models `value` is D and the singular point sits at `shift`,
    below the samples when side is +1 and above them when side is -1.
    For conics `value` is the constant curvature.
    """
    name: str
    residual: float
    value: float
    shift: float = 0.0
    side: int = 1


def _fit_conic(u: np.ndarray, points: np.ndarray, scale: float) -> Tuple[RepresentationFit, RepresentationFit]:
    length = u[-1] - u[0]
    local = u - u[0]

    def objective(scaled: float) -> float:
        return _projection_residual(conic_span(scaled / length ** 2, local), points, scale)

    grid = np.linspace(-100.0, 100.0, 81)
    values = [objective(c) for c in grid]
    best = int(np.argmin(values))
    lo, hi = grid[max(best - 1, 0)], grid[min(best + 1, len(grid) - 1)]
    result = minimize_scalar(objective, bounds=(lo, hi), method="bounded",
                             options={"xatol": 1e-10})
    scaled = float(result.x) if result.fun < values[best] else float(grid[best])
    free = RepresentationFit("conic", min(float(result.fun), values[best]), scaled / length ** 2)
    parabola = RepresentationFit("parabola", objective(0.0), 0.0)
    return free, parabola


def _distance(u: np.ndarray, side: int, log_gap: float) -> np.ndarray:
    if side > 0:
        return u - u[0] + math.exp(log_gap)
    return u[-1] - u + math.exp(log_gap)


def _fit_euler(u: np.ndarray, points: np.ndarray, scale: float,
               fixed_discriminant: Optional[float] = None) -> RepresentationFit:
    """
    Fit D and the singular point u*, searched as log of its distance to the
    nearest end of the samples. Both sides of the sample range are tried.
    """
    length = u[-1] - u[0]
    gaps = np.log(length * np.logspace(-3, 2, 11))
    best: Optional[RepresentationFit] = None

    for side in (1, -1):
        def residual(discriminant: float, log_gap: float) -> float:
            return _projection_residual(euler_span(discriminant, _distance(u, side, log_gap)), points, scale)

        if fixed_discriminant is None:
            starts = [(d, q) for d in np.linspace(-8.0, 8.0, 33) for q in gaps]
            objective: Callable = lambda x: residual(x[0], x[1])
        else:
            starts = [(q,) for q in gaps]
            objective = lambda x: residual(fixed_discriminant, x[0])

        scored = sorted(((objective(np.array(s)), s) for s in starts), key=lambda item: item[0])
        value, x = scored[0][0], np.array(scored[0][1], dtype=float)
        for _, start in scored[:2]:
            result = minimize(objective, np.array(start, dtype=float), method="Nelder-Mead",
                              options={"xatol": 1e-10, "fatol": 1e-14, "maxiter": 2000})
            if result.fun < value:
                value, x = float(result.fun), result.x

        if fixed_discriminant is None:
            discriminant, log_gap = float(x[0]), float(x[1])
        else:
            discriminant, log_gap = fixed_discriminant, float(x[0])
        shift = u[0] - math.exp(log_gap) if side > 0 else u[-1] + math.exp(log_gap)
        if best is None or value < best.residual:
            best = RepresentationFit("euler", float(value), discriminant, shift, side)

    if fixed_discriminant is not None:
        best.name = "xlogx" if fixed_discriminant == 0.0 else "log"
    return best


def _label_from_fit(fit: RepresentationFit, forced: Optional[CurveClass] = None) -> ClassLabel:
    method = "representation_fit"
    if fit.name in ("conic", "parabola"):
        coefficients = ESACoefficients(Sign.ZERO, 0.0, fit.value, fit.residual)
        conic = Conic.PARABOLA if fit.name == "parabola" else _conic(fit.value)
        return ClassLabel(CurveClass.QUADRATIC, coefficients, conic=conic, method=method)

    quarter_gap = 0.25 - fit.value
    if abs(quarter_gap) < 1e-12:
        coefficients = ESACoefficients(Sign.ZERO, 0.0, 0.0, fit.residual)
        return ClassLabel(CurveClass.QUADRATIC, coefficients, conic=Conic.PARABOLA, method=method)
    sign = Sign.PLUS if quarter_gap > 0 else Sign.MINUS
    # kappa^SA = sign (xi (u - u*))^-2, written as sign (xi u + eta)^-2
    xi = fit.side * abs(quarter_gap) ** -0.5
    coefficients = ESACoefficients(sign, xi, -xi * fit.shift, fit.residual)
    if forced == CurveClass.XLOGX_GRAPH:
        return ClassLabel(CurveClass.XLOGX_GRAPH, coefficients, omega=0.0, method=method)
    if forced == CurveClass.LOG_GRAPH:
        return ClassLabel(CurveClass.LOG_GRAPH, coefficients, omega=LOG_GRAPH_OMEGA, method=method)
    if fit.value < 0:
        return ClassLabel(CurveClass.LOG_SPIRAL, coefficients, omega=math.sqrt(-fit.value), method=method)
    omega = math.sqrt(fit.value)
    return _power_graph(coefficients, omega, method)


def classify_by_representation(curve: SampledCurve) -> ClassLabel:
    """
    Fit the sample points against each candidate family and keep the
    simplest one whose residual is within `model_selection_ratio` of the best.

    Preference: parabola, conic, x log x (D = 0), log graph (D = 9/4), free D.

    Raises:
        Unclassifiable: No candidate fits within `representation_fit_residual`
    """
    tolerances = get_tolerances()
    if curve.kind != ParamKind.EQUIAFFINE:
        curve = reparametrize(curve, ParamKind.EQUIAFFINE)
    u, points = curve.params, curve.points
    scale = curve.bbox_diagonal()

    conic, parabola = _fit_conic(u, points, scale)
    euler = _fit_euler(u, points, scale)
    best = min(conic.residual, euler.residual)
    if best > tolerances.representation_fit_residual:
        raise Unclassifiable(
            "No class of the ESA family fits the samples",
            {"conic_residual": conic.residual, "euler_residual": euler.residual},
        )
    threshold = tolerances.model_selection_ratio * max(best, 1e-12)
    logger.debug(f"Representation fit: conic {conic.residual:.3e}, euler {euler.residual:.3e} (D={euler.value:.4g})")

    if parabola.residual <= threshold:
        return _label_from_fit(parabola)
    if conic.residual <= threshold:
        return _label_from_fit(conic)
    xlogx = _fit_euler(u, points, scale, fixed_discriminant=0.0)
    if xlogx.residual <= threshold:
        return _label_from_fit(xlogx, CurveClass.XLOGX_GRAPH)
    log_graph = _fit_euler(u, points, scale, fixed_discriminant=LOG_GRAPH_OMEGA ** 2)
    if log_graph.residual <= threshold:
        return _label_from_fit(log_graph, CurveClass.LOG_GRAPH)
    return _label_from_fit(euler)


# =============================================================================
# PIPELINE
# =============================================================================

def classify(curve: SampledCurve, route: CurvatureRoute = CurvatureRoute.EQUIAFFINE,
             robust: bool = True) -> ClassLabel:
    """
    Assign one of the five classes.

    equiaffine_curvature -> fit_esa_curvature -> dispatch. With robust=True a
    MixedSign or PoorFit curvature fit falls back to classify_by_representation.

    Raises:
        Unclassifiable: The curvature fit failed and robust is off, or the
            fallback found no fitting class
    """
    profile = equiaffine_curvature(curve, route)
    try:
        coefficients = fit_esa_curvature(profile)
    except (MixedSign, PoorFit) as e:
        if not robust:
            raise Unclassifiable(f"Curvature fit failed: {e.message}", e.to_dict()) from e
        logger.warning(f"Curvature fit failed ({e.code}); falling back to representation fit")
        return classify_by_representation(curve)
    return label_from_coefficients(coefficients)

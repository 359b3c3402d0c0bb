"""
Closed-form generators for the curve families.

Each family is sampled on a uniform grid of its natural parameter:
w for the logarithmic spiral, arc length s for log-aesthetic curves,
equiaffine arc length u for conics and ESA-class curves and the abscissa
t for the graphs.
"""
import logging
import math
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from config import get_numerics
from models.affine import AffineMap2
from models.curve import ParamKind, SampledCurve
from models.errors import InvalidSpec, NonMonotoneKappa, SingularRange
from models.family import (
    LAC,
    EsaClass,
    FamilySpec,
    LogGraph,
    LogSpiral,
    PowerGraph,
    Quadratic,
    Sign,
    XLogXGraph,
)
from models.laws import EsaRegime, EulerLaw

from . import numerics

logger = logging.getLogger(__name__)

LOG_OMEGA = 1.5


# =============================================================================
# SAMPLING HELPERS
# =============================================================================

def _grid(spec: FamilySpec) -> np.ndarray:
    return np.linspace(spec.lo, spec.hi, spec.n)


def _curve(params: np.ndarray, x: np.ndarray, y: np.ndarray, kind: ParamKind,
           spec: FamilySpec, **extra) -> SampledCurve:
    meta = {"family": spec.family.name, "spec": spec.to_dict()}
    meta.update(extra)
    return SampledCurve.from_xy(params, x, y, kind=kind, meta=meta)


def _require_positive(values: np.ndarray, what: str, spec: FamilySpec) -> None:
    if np.any(values <= 0):
        raise SingularRange(
            f"{what} must stay positive on the range",
            {"range": [spec.lo, spec.hi], "family": spec.family.name},
        )


# =============================================================================
# LOG-AESTHETIC CURVES
# =============================================================================

def lac_curvature(family: LAC) -> Callable[[np.ndarray], np.ndarray]:
    """kappa^E(s) = (xi s + eta)^(-1/alpha), or exp(xi s + eta) for alpha = 0."""
    if family.alpha == 0:
        return lambda s: np.exp(family.xi * np.asarray(s) + family.eta)
    return lambda s: (family.xi * np.asarray(s) + family.eta) ** (-1.0 / family.alpha)


def _check_lac_range(family: LAC, spec: FamilySpec) -> None:
    if family.alpha == 0:
        return
    ends = family.xi * np.array([spec.lo, spec.hi]) + family.eta
    if np.any(ends <= 0):
        raise SingularRange(
            "xi s + eta must be positive on the range",
            {"range": [spec.lo, spec.hi], "xi": family.xi, "eta": family.eta},
        )


def _frenet_rhs(kappa: Callable, speed: Callable = lambda t: 1.0):
    """Planar Frenet system in (x, y, theta), with ds/dt = speed(t)."""
    def rhs(t: float, state: np.ndarray) -> np.ndarray:
        s_t = speed(t)
        return np.array([math.cos(state[2]) * s_t, math.sin(state[2]) * s_t, kappa(t) * s_t])
    return rhs


def _generate_lac(spec: FamilySpec) -> SampledCurve:
    family = spec.family
    _check_lac_range(family, spec)
    kappa = lac_curvature(family)
    s = _grid(spec)
    states = numerics.rk4(_frenet_rhs(kappa), np.zeros(3), s, get_numerics().rk4_substeps)
    return _curve(s, states[:, 0], states[:, 1], ParamKind.ARC_LENGTH, spec)


# =============================================================================
# ESA-CLASS CURVES
# =============================================================================

def esa_points(law: EulerLaw, w: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Explicit (x, y) of the curve with kappa^SA(w) = +-(xi w)^-2, w > 0.

    The coordinates are antiderivatives of the Wronskian-normalized basis,
    so det(g_w, g_ww) = 1.
    """
    w = np.asarray(w, dtype=float)
    omega = law.omega
    regime = law.regime
    if regime == EsaRegime.DOUBLE:
        x = (2.0 / 3.0) * w ** 1.5
        return x, x * (np.log(w) - 2.0 / 3.0)
    if regime == EsaRegime.COMPLEX:
        p = 1.5 + 1j * omega
        z = w ** p / (p * math.sqrt(omega))
        return z.real, z.imag
    scale = math.sqrt(2.0 * omega)
    x = w ** (1.5 + omega) / ((1.5 + omega) * scale)
    if math.isclose(omega, LOG_OMEGA, rel_tol=1e-12):
        y = -np.log(w) / scale
    else:
        y = -w ** (1.5 - omega) / ((1.5 - omega) * scale)
    return x, y


def _generate_esa(spec: FamilySpec) -> SampledCurve:
    family = spec.family
    law = EulerLaw(family.sign, family.xi)
    u = _grid(spec)
    w = u + family.eta / family.xi
    if np.any(w <= 0):
        raise SingularRange(
            "u + eta/xi must be positive on the range",
            {"range": [spec.lo, spec.hi], "singular_u": -family.eta / family.xi},
        )
    x, y = esa_points(law, w)
    return _curve(u, x, y, ParamKind.EQUIAFFINE, spec, regime=law.regime.value, omega=law.omega)


def esa_class_maps(sign: Sign, xi: float, k: float, eps: float) -> AffineMap2:
    """
    Analytic shift map F(eps) of an ESA-class curve in its ESA parameter.

    With u = exp(k t) and lam = exp(k eps), g(t + eps) = F(eps) g(t) for the
    curve produced by `esa_points`.
    """
    law = EulerLaw(sign, xi)
    lam = math.exp(k * eps)
    omega = law.omega
    if law.regime == EsaRegime.DOUBLE:
        linear = lam ** 1.5 * np.array([[1.0, 0.0], [k * eps, 1.0]])
        return AffineMap2(linear, np.zeros(2))
    if law.regime == EsaRegime.COMPLEX:
        angle = omega * k * eps
        rotation = np.array([[math.cos(angle), -math.sin(angle)], [math.sin(angle), math.cos(angle)]])
        return AffineMap2(lam ** 1.5 * rotation, np.zeros(2))
    if math.isclose(omega, LOG_OMEGA, rel_tol=1e-12):
        shift = -k * eps / math.sqrt(2.0 * omega)
        return AffineMap2(np.diag([lam ** 3, 1.0]), np.array([0.0, shift]))
    return AffineMap2(np.diag([lam ** (1.5 + omega), lam ** (1.5 - omega)]), np.zeros(2))


# =============================================================================
# OTHER FAMILIES
# =============================================================================

def _generate_spiral(spec: FamilySpec) -> SampledCurve:
    family = spec.family
    w = _grid(spec)
    z = np.exp((family.a + 1j * family.b) * w)
    return _curve(w, z.real, z.imag, ParamKind.ARBITRARY, spec)


def _generate_quadratic(spec: FamilySpec) -> SampledCurve:
    family = spec.family
    k, rho = family.kappa_sa, family.aspect
    u = _grid(spec)
    if k == 0:
        x, y = rho * u, u ** 2 / (2.0 * rho)
        conic = "parabola"
    else:
        root = math.sqrt(abs(k))
        a = abs(k) ** -0.75 * rho
        b = abs(k) ** -0.75 / rho
        if k > 0:
            x, y = a * np.cos(root * u), b * np.sin(root * u)
            conic = "ellipse"
        else:
            x, y = a * np.cosh(root * u), -b * np.sinh(root * u)
            conic = "hyperbola"
    return _curve(u, x, y, ParamKind.EQUIAFFINE, spec, conic=conic)


def _generate_graph(spec: FamilySpec) -> SampledCurve:
    family = spec.family
    t = _grid(spec)
    if isinstance(family, PowerGraph):
        integer_power = float(family.alpha).is_integer() and family.alpha >= 0
        if not integer_power:
            _require_positive(t, "t", spec)
        y = t ** family.alpha
    elif isinstance(family, LogGraph):
        _require_positive(t, "t", spec)
        y = np.log(t)
    else:
        _require_positive(t, "t", spec)
        y = t * np.log(t)
    return _curve(t, t, y, ParamKind.ARBITRARY, spec)


_GENERATORS = {
    LogSpiral: _generate_spiral,
    LAC: _generate_lac,
    Quadratic: _generate_quadratic,
    EsaClass: _generate_esa,
    PowerGraph: _generate_graph,
    LogGraph: _generate_graph,
    XLogXGraph: _generate_graph,
}


def generate(spec: FamilySpec) -> SampledCurve:
    """
    Sample a curve family.

    Raises:
        InvalidSpec: Unknown family
        SingularRange: The range touches a singularity of the family
    """
    generator = _GENERATORS.get(type(spec.family))
    if generator is None:
        raise InvalidSpec(f"No generator for {type(spec.family).__name__}")
    logger.debug(f"Generating {spec.family.name} on [{spec.lo}, {spec.hi}] with {spec.n} samples")
    return generator(spec)


# =============================================================================
# MIURA SELF-AFFINE PARAMETRIZATION
# =============================================================================

def _kappa_reference(family: LAC, spec: FamilySpec) -> float:
    kappa = lac_curvature(family)
    zero_defined = spec.lo <= 0.0 <= spec.hi and (family.alpha == 0 or family.eta > 0)
    return float(kappa(0.0 if zero_defined else spec.lo))


def msa_arc_length(law: dict, t: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    s(t) and s_t(t) of a log-aesthetic curve in its MSA parameter.

    Args:
        law: {"alpha", "xi", "eta", "kappa_ref"} as stored in curve meta
        t: Parameter values

    Returns:
        (s, s_t)
    """
    alpha, xi, eta, kappa_ref = law["alpha"], law["xi"], law["eta"], law["kappa_ref"]
    t = np.asarray(t, dtype=float)
    if alpha == 0:
        return (math.log(kappa_ref) + t - eta) / xi, np.full_like(t, 1.0 / xi)
    power = kappa_ref ** -alpha * np.exp(-alpha * t)
    return (power - eta) / xi, -(alpha / xi) * power


def msa_parametrization(spec: FamilySpec, n: Optional[int] = None) -> SampledCurve:
    """
    A log-aesthetic curve sampled uniformly in t = log(kappa^E(s) / kappa_ref).

    kappa_ref is the curvature at s = 0 when that point is on the curve's law,
    otherwise at s = lo. In this parameter kappa^E(t) = kappa_ref e^t and
    s_t(t + eps) = e^(-alpha eps) s_t(t). The curve is the same point set as
    generate(spec) (same start frame at s = lo).

    Raises:
        InvalidSpec: Not a LAC spec
        NonMonotoneKappa: xi = 0, the curvature is constant
    """
    family = spec.family
    if not isinstance(family, LAC):
        raise InvalidSpec("MSA parametrization needs a LAC spec", {"family": family.name})
    if family.xi == 0:
        raise NonMonotoneKappa("Curvature is constant; t = log(kappa/kappa_ref) is not a parameter")
    _check_lac_range(family, spec)

    n = n or spec.n
    kappa = lac_curvature(family)
    kappa_ref = _kappa_reference(family, spec)
    law = {"alpha": family.alpha, "xi": family.xi, "eta": family.eta, "kappa_ref": kappa_ref}

    t_lo, t_hi = np.log(kappa(np.array([spec.lo, spec.hi])) / kappa_ref)
    t = np.linspace(min(t_lo, t_hi), max(t_lo, t_hi), n)

    if family.alpha == 0:
        def speed(tau: float) -> float:
            return 1.0 / family.xi
    else:
        scale = -(family.alpha / family.xi) * kappa_ref ** -family.alpha

        def speed(tau: float) -> float:
            return scale * math.exp(-family.alpha * tau)

    rhs = _frenet_rhs(lambda tau: kappa_ref * math.exp(tau), speed)
    # Integrate from the end where s = lo so the start frame matches generate()
    forward = t_lo <= t_hi
    grid = t if forward else t[::-1]
    states = numerics.rk4(rhs, np.zeros(3), grid, get_numerics().rk4_substeps)
    if not forward:
        states = states[::-1]

    kind = ParamKind.ESA_PARAM if family.alpha == 1 else ParamKind.ARBITRARY
    return _curve(t, states[:, 0], states[:, 1], kind, spec, msa=law)


# =============================================================================
# REFERENCE FAMILIES
# =============================================================================

REFERENCE_SPECS: Tuple[FamilySpec, ...] = (
    FamilySpec(PowerGraph(3.0), (0.0, 1.0), 200),
    FamilySpec(LogSpiral(0.1, 1.0), (0.0, 2.0 * math.pi), 400),
    FamilySpec(LogGraph(), (1.0, 2.0), 200),
    FamilySpec(XLogXGraph(), (1e-3, 1.5), 200),
)

REFERENCE_DEFORMATIONS: Tuple[AffineMap2, ...] = (
    AffineMap2(np.array([[1.0, 0.5], [0.0, 1.0]]), np.zeros(2)),
    AffineMap2(np.array([[1.5, 0.0], [0.3, 0.6]]), np.zeros(2)),
    AffineMap2(np.array([[0.8, -0.4], [0.4, 1.2]]), np.zeros(2)),
    AffineMap2(np.array([[1.0, 0.0], [-0.6, 1.0]]), np.zeros(2)),
)


def reference_family_curves(deform: bool = False,
                            deformations: Optional[Sequence[AffineMap2]] = None) -> List[SampledCurve]:
    """
    Power graph, logarithmic spiral, log graph and x log x graph, each
    translated to start at the origin.

    Args:
        deform: Apply one affine map per curve
        deformations: Maps to use instead of REFERENCE_DEFORMATIONS
    """
    maps = list(deformations or REFERENCE_DEFORMATIONS)
    if deform and len(maps) != len(REFERENCE_SPECS):
        raise InvalidSpec("Need one deformation per reference curve", {"expected": len(REFERENCE_SPECS)})
    curves = []
    for index, spec in enumerate(REFERENCE_SPECS):
        curve = generate(spec)
        curve = curve.transformed(np.eye(2), -curve.points[0])
        if deform:
            curve = curve.transformed(maps[index].linear, maps[index].translation)
        curves.append(curve.with_meta(reference=True, deformed=deform))
    return curves


def family_label(curve: SampledCurve) -> str:
    """Short family tag of a generated curve, 'ingested' otherwise."""
    return str(curve.meta.get("family", "ingested"))

"""
Curves from prescribed equiaffine curvature.

A Wronskian-normalized basis (f, g) of z_uu + kappa^SA(u) z = 0 determines
the curve up to an equiaffine motion: g(u) = g(u_lo) + integral of (f, g) du.
"""
import logging
import math

import numpy as np
from scipy.interpolate import CubicSpline

from config import get_numerics, get_tolerances
from models.curve import MIN_SAMPLES, ParamKind, PlanarPoint, SampledCurve
from models.errors import TooFewSamples, WronskianDrift
from models.laws import BasisPair, CurvatureLaw, EsaRegime, EulerLaw

from . import numerics

logger = logging.getLogger(__name__)


def euler_basis(law: EulerLaw, u: np.ndarray) -> BasisPair:
    """
    Closed-form basis of z_uu +- (xi u)^-2 z = 0 on u > 0 with W = 1.

    Real exponents: (u^(1/2+w), -u^(1/2-w)) / sqrt(2w)
    Double root:    (sqrt(u), sqrt(u) log u)
    Complex:        (Re, Im) of u^(1/2+iw) / sqrt(w)
    """
    u = np.asarray(u, dtype=float)
    omega = law.omega
    if law.regime == EsaRegime.DOUBLE:
        root = np.sqrt(u)
        log_u = np.log(u)
        return BasisPair(u, root, root * log_u, 0.5 / root, (log_u + 2.0) / (2.0 * root))
    if law.regime == EsaRegime.COMPLEX:
        p = 0.5 + 1j * omega
        h = u ** p / math.sqrt(omega)
        h_u = p * u ** (p - 1.0) / math.sqrt(omega)
        return BasisPair(u, h.real, h.imag, h_u.real, h_u.imag)
    scale = math.sqrt(2.0 * omega)
    f = u ** (0.5 + omega) / scale
    g = -u ** (0.5 - omega) / scale
    f_u = (0.5 + omega) * u ** (omega - 0.5) / scale
    g_u = -(0.5 - omega) * u ** (-0.5 - omega) / scale
    return BasisPair(u, f, g, f_u, g_u)


def _tabulated_basis(law: CurvatureLaw, u: np.ndarray) -> BasisPair:
    profile = law.profile
    kappa = CubicSpline(profile.params, profile.kappa)
    numerics_config = get_numerics()
    substeps = max(numerics_config.rk4_substeps,
                   math.ceil(numerics_config.min_basis_steps / (len(u) - 1)))

    def rhs(t: float, z: np.ndarray) -> np.ndarray:
        k = float(kappa(t))
        return np.array([z[1], -k * z[0], z[3], -k * z[2]])

    states = numerics.rk4(rhs, np.array([1.0, 0.0, 0.0, 1.0]), u, substeps)
    return BasisPair(u, states[:, 0], states[:, 2], states[:, 1], states[:, 3])


def solve_basis(law: CurvatureLaw, n: int) -> BasisPair:
    """
    Basis (f, g) on n uniform samples of the law's domain.

    Tabulated laws are integrated with RK4 from (f, f_u) = (1, 0) and
    (g, g_u) = (0, 1) at u_lo, so W = 1 initially; Euler laws use the closed
    form.

    Raises:
        TooFewSamples: n < 9
        WronskianDrift: |W - 1| exceeds the configured guard
    """
    if n < MIN_SAMPLES:
        raise TooFewSamples(f"Need at least {MIN_SAMPLES} samples", {"samples": n})
    u = np.linspace(law.domain[0], law.domain[1], n)
    if law.is_tabulated:
        basis = _tabulated_basis(law, u)
    else:
        basis = euler_basis(law.euler, u)

    drift = basis.wronskian_drift
    limit = get_tolerances().wronskian_drift
    if drift > limit:
        raise WronskianDrift(
            "Wronskian drifted from 1; use more samples",
            {"drift": drift, "limit": limit, "samples": n},
        )
    logger.debug(f"Basis on [{u[0]:.4g}, {u[-1]:.4g}] with Wronskian drift {drift:.2e}")
    return basis


def reconstruct(basis: BasisPair, base: PlanarPoint = PlanarPoint.origin()) -> SampledCurve:
    """g(u) = base + cumulative Simpson integral of (f, g); kind Equiaffine."""
    values = np.column_stack([basis.f, basis.g])
    points = base.as_array() + numerics.cumulative_integral_on(values, basis.params)
    return SampledCurve(basis.params, points, ParamKind.EQUIAFFINE, {"family": "reconstructed"})


def curve_from_law(law: CurvatureLaw, n: int,
                   base: PlanarPoint = PlanarPoint.origin()) -> SampledCurve:
    """solve_basis followed by reconstruct."""
    return reconstruct(solve_basis(law, n), base)

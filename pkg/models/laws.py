"""
Inputs and outputs of the representation formula.
"""
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from .curve import CurvatureProfile, Geometry, ParamKind
from .errors import DomainContainsSingularity, InvalidSpec
from .family import Sign


@dataclass(frozen=True, eq=False)
class BasisPair:
    """
    Solutions f, g of z_uu + kappa^SA z = 0 with Wronskian f g_u - g f_u = 1.

    Attributes:
        params: u values
        f, g: Basis solutions
        f_u, g_u: Their u-derivatives
    """
    params: np.ndarray
    f: np.ndarray
    g: np.ndarray
    f_u: np.ndarray
    g_u: np.ndarray

    def __post_init__(self):
        arrays = [np.array(a, dtype=float) for a in (self.params, self.f, self.g, self.f_u, self.g_u)]
        if len({a.shape for a in arrays}) != 1 or arrays[0].ndim != 1:
            raise InvalidSpec("Basis arrays must be 1-D with equal length")
        for name, array in zip(("params", "f", "g", "f_u", "g_u"), arrays):
            array.setflags(write=False)
            object.__setattr__(self, name, array)

    @property
    def wronskian(self) -> np.ndarray:
        return self.f * self.g_u - self.g * self.f_u

    @property
    def wronskian_drift(self) -> float:
        return float(np.max(np.abs(self.wronskian - 1.0)))

    def canonical(self) -> "BasisPair":
        """
        The same solution space with (f, f_u) = (1, 0) and (g, g_u) = (0, 1)
        at the first sample.
        """
        f0, g0, df0, dg0 = self.f[0], self.g[0], self.f_u[0], self.g_u[0]
        return BasisPair(
            params=self.params,
            f=dg0 * self.f - df0 * self.g,
            g=-g0 * self.f + f0 * self.g,
            f_u=dg0 * self.f_u - df0 * self.g_u,
            g_u=-g0 * self.f_u + f0 * self.g_u,
        )


class EsaRegime(Enum):
    """Root structure of the indicial equation r(r - 1) + sign xi^-2 = 0."""
    REAL = "real"          # distinct real exponents 1/2 +- omega
    DOUBLE = "double"      # repeated exponent 1/2
    COMPLEX = "complex"    # exponents 1/2 +- i omega


@dataclass(frozen=True)
class EulerLaw:
    """kappa^SA(u) = +-(xi u)^-2."""
    sign: Sign
    xi: float

    def __post_init__(self):
        if isinstance(self.sign, str):
            object.__setattr__(self, "sign", Sign(self.sign))
        if self.sign == Sign.ZERO:
            raise InvalidSpec("EulerLaw sign must be plus or minus")
        if self.xi == 0 or not np.isfinite(self.xi):
            raise InvalidSpec("EulerLaw needs a finite xi != 0", {"xi": self.xi})

    def __call__(self, u: np.ndarray) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        return self.sign.factor / (self.xi * u) ** 2

    @property
    def discriminant(self) -> float:
        """1/4 - sign xi^-2."""
        return 0.25 - self.sign.factor / self.xi ** 2

    @property
    def regime(self) -> EsaRegime:
        if self.sign == Sign.PLUS and math.isclose(abs(self.xi), 2.0, rel_tol=1e-12):
            return EsaRegime.DOUBLE
        if self.sign == Sign.PLUS and abs(self.xi) < 2.0:
            return EsaRegime.COMPLEX
        return EsaRegime.REAL

    @property
    def omega(self) -> float:
        """sqrt(|xi^-2 +- 1/4|); 0 in the double-root regime."""
        if self.regime == EsaRegime.DOUBLE:
            return 0.0
        return math.sqrt(abs(self.discriminant))


@dataclass(frozen=True, eq=False)
class CurvatureLaw:
    """
    Prescribed equiaffine curvature on a domain.

    Exactly one of `profile` (tabulated values, interpolated cubically) and
    `euler` (closed-form Euler law) is set.
    """
    domain: Tuple[float, float]
    profile: Optional[CurvatureProfile] = None
    euler: Optional[EulerLaw] = None

    def __post_init__(self):
        lo, hi = (float(v) for v in self.domain)
        object.__setattr__(self, "domain", (lo, hi))
        if not lo < hi:
            raise InvalidSpec("domain needs u_lo < u_hi", {"domain": [lo, hi]})
        if (self.profile is None) == (self.euler is None):
            raise InvalidSpec("CurvatureLaw needs exactly one of profile or euler")
        if self.profile is not None:
            if self.profile.geometry != Geometry.EQUIAFFINE:
                raise InvalidSpec("Tabulated law must hold equiaffine curvature")
            p = self.profile.params
            if lo < p[0] - 1e-12 * max(1.0, abs(p[0])) or hi > p[-1] + 1e-12 * max(1.0, abs(p[-1])):
                raise InvalidSpec(
                    "domain exceeds the tabulated range",
                    {"domain": [lo, hi], "table": [float(p[0]), float(p[-1])]},
                )
        if self.euler is not None and lo <= 0.0:
            raise DomainContainsSingularity(
                "Euler law domain must lie in u > 0", {"domain": [lo, hi]}
            )

    @classmethod
    def tabulated(cls, profile: CurvatureProfile,
                  domain: Optional[Tuple[float, float]] = None) -> "CurvatureLaw":
        domain = domain or (float(profile.params[0]), float(profile.params[-1]))
        return cls(domain=domain, profile=profile)

    @classmethod
    def constant(cls, value: float, domain: Tuple[float, float], samples: int = 64) -> "CurvatureLaw":
        """Tabulated constant curvature."""
        params = np.linspace(domain[0], domain[1], samples)
        profile = CurvatureProfile(params, np.full(samples, float(value)), Geometry.EQUIAFFINE, ParamKind.EQUIAFFINE)
        return cls(domain=domain, profile=profile)

    @classmethod
    def euler_law(cls, sign: Sign, xi: float, domain: Tuple[float, float]) -> "CurvatureLaw":
        return cls(domain=domain, euler=EulerLaw(sign, xi))

    @property
    def is_tabulated(self) -> bool:
        return self.profile is not None

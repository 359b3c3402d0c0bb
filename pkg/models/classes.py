"""
Classification models for curves with extendable self-affinity.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional

from .family import Sign


class CurveClass(Enum):
    """The five classes of curves with the ESA."""
    POWER_GRAPH = "PowerGraph"
    LOG_GRAPH = "LogGraph"
    XLOGX_GRAPH = "XLogXGraph"
    LOG_SPIRAL = "LogSpiral"
    QUADRATIC = "Quadratic"


class Conic(Enum):
    """Constant equiaffine curvature curves."""
    PARABOLA = "Parabola"
    ELLIPSE = "Ellipse"
    HYPERBOLA = "Hyperbola"


class OmegaDirection(Enum):
    ALPHA_TO_OMEGA = "alpha_to_omega"
    OMEGA_TO_ALPHA = "omega_to_alpha"


@dataclass(frozen=True)
class ESACoefficients:
    """
    Recovered curvature law kappa^SA(u) = +-(xi u + eta)^-2.

    For sign ZERO the curvature is constant: xi is meaningless (0.0) and the
    constant value itself is stored in eta.

    Attributes:
        sign: PLUS, MINUS or ZERO
        xi: Slope of |kappa|^(-1/2) against u
        eta: Intercept, or the constant curvature for sign ZERO
        fit_rmse: Relative RMSE of the reconstructed curvature
    """
    sign: Sign
    xi: float
    eta: float
    fit_rmse: float

    @property
    def constant(self) -> Optional[float]:
        return self.eta if self.sign == Sign.ZERO else None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "sign": self.sign.value,
            "xi": self.xi,
            "eta": self.eta,
            "fit_rmse": self.fit_rmse,
        }


@dataclass(frozen=True)
class ClassLabel:
    """
    One of the five classes with its recovered parameters.

    Attributes:
        curve_class: Which class
        coefficients: Fitted curvature law
        omega: Exponent parameter, None for Quadratic
        alpha: Power-graph exponent, set only for POWER_GRAPH
        conic: Conic type, set only for QUADRATIC
        method: "curvature" or "representation_fit"
    """
    curve_class: CurveClass
    coefficients: ESACoefficients
    omega: Optional[float] = None
    alpha: Optional[float] = None
    conic: Optional[Conic] = None
    method: str = "curvature"

    def __post_init__(self):
        if self.curve_class == CurveClass.POWER_GRAPH and self.alpha is not None and self.alpha == -1.0:
            raise ValueError("alpha = -1 is the hyperbola and belongs to the Quadratic class")

    @property
    def name(self) -> str:
        if self.curve_class == CurveClass.QUADRATIC and self.conic is not None:
            return f"Quadratic({self.conic.value})"
        if self.curve_class == CurveClass.POWER_GRAPH and self.alpha is not None:
            return f"PowerGraph(alpha={self.alpha:.6g})"
        return self.curve_class.value

    def to_dict(self) -> Dict[str, Any]:
        return {
            "class": self.curve_class.value,
            "label": self.name,
            "omega": self.omega,
            "alpha": self.alpha,
            "conic": self.conic.value if self.conic else None,
            "method": self.method,
            "coefficients": self.coefficients.to_dict(),
        }

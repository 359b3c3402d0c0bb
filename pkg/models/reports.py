"""
Result models for the self-affinity checks.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np

from .affine import AffineMap2


class Verdict(Enum):
    """Outcome of an extendable self-affinity test."""
    ESA = "ESA"
    NOT_ESA = "NotESA"
    INCONCLUSIVE = "Inconclusive"


class AffineGroup(Enum):
    """Group the shift maps are fitted in."""
    FULL_AFFINE = "affine"
    EQUIAFFINE = "equiaffine"


@dataclass
class ShiftFit:
    """
    Least-squares affine map taking gamma(t) to gamma(t + eps).

    Attributes:
        affine_map: Fitted map (determinant-normalized for the equiaffine group)
        residual: RMS point mismatch divided by the bounding-box diagonal
        raw_det: Determinant before any normalization
        eps: Shift actually used (grid multiple)
        overlap: Number of sample pairs in the fit
    """
    affine_map: AffineMap2
    residual: float
    raw_det: float
    eps: float
    overlap: int


@dataclass
class ESAReport:
    """
    Full result of an extendable self-affinity test over a shift grid.

    The grid always contains 0 with the identity map and zero residual.
    """
    eps_grid: np.ndarray
    maps: List[AffineMap2]
    residuals: np.ndarray
    dets: np.ndarray
    generator: np.ndarray
    det_rate: float
    det_r_squared: float
    composition_error: float
    verdict: Verdict
    group: AffineGroup = AffineGroup.FULL_AFFINE

    @property
    def max_residual(self) -> float:
        return float(np.max(self.residuals))

    @property
    def k_estimate(self) -> float:
        """tr(A)/3, the exponential rate of the equiaffine parameter."""
        return float(np.trace(self.generator) / 3.0)

    def summary(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "group": self.group.value,
            "max_residual": self.max_residual,
            "composition_error": self.composition_error,
            "det_rate": self.det_rate,
            "det_r_squared": self.det_r_squared,
            "k_estimate": self.k_estimate,
            "generator": np.asarray(self.generator).tolist(),
        }


@dataclass
class MSAReport:
    """Miura self-affinity ratio test."""
    alpha: float
    kappa_ratio_error: float
    speed_ratio_error: float
    verdict: bool
    closed_form: bool = False
    eps_grid: List[float] = field(default_factory=list)
    law_mismatch: Optional[float] = None

    def summary(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict,
            "alpha": self.alpha,
            "kappa_ratio_error": self.kappa_ratio_error,
            "speed_ratio_error": self.speed_ratio_error,
            "closed_form": self.closed_form,
            "law_mismatch": self.law_mismatch,
        }


@dataclass
class LCGData:
    """Logarithmic curvature graph and its fitted line."""
    points: np.ndarray
    slope: float
    intercept: float
    r_squared: float

    def summary(self) -> Dict[str, Any]:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "r_squared": self.r_squared,
            "points": int(len(self.points)),
        }


@dataclass
class ThetaAffinityReport:
    """Regression of theta(t + eps) against theta(t) for each shift."""
    alpha: float
    eps_grid: np.ndarray
    slopes: np.ndarray
    intercepts: np.ndarray
    expected: np.ndarray
    rate_error: float
    verdict: bool

    def summary(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict,
            "alpha": self.alpha,
            "rate_error": self.rate_error,
            "slopes": np.asarray(self.slopes).tolist(),
            "expected": np.asarray(self.expected).tolist(),
        }


@dataclass
class ShiftDerivativeReport:
    """
    Numeric check of the shift-derivative identities of an ESA curve.

    Attributes:
        second_order_error: max |g_uu - ((1/u_t) A - (u_tt/u_t^2) I) g_u| relative
        third_order_error: max |g_ttt - A^2 g_t| relative
        k_used: Rate of u = exp(k t + l) used for the transform
        k_from_trace: tr(A)/3 from the fitted generator
    """
    second_order_error: float
    third_order_error: float
    k_used: float
    k_from_trace: float
    passed: bool

    def summary(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "second_order_error": self.second_order_error,
            "third_order_error": self.third_order_error,
            "k_used": self.k_used,
            "k_from_trace": self.k_from_trace,
        }

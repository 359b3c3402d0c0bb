"""
Sampled curve models.

A SampledCurve is an immutable polyline tagged with the Klein-geometry
parameter its samples are taken in. CurvatureProfile pairs per-sample
curvature values with the parameter values they were estimated at.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional

import numpy as np

from .errors import InvalidCurve, TooFewSamples

MIN_SAMPLES = 9


class ParamKind(Enum):
    """Which parameter the samples of a curve are taken in."""
    ARBITRARY = "Arbitrary"
    ARC_LENGTH = "ArcLength"            # s, unit Euclidean speed
    TURNING_ANGLE = "TurningAngle"      # theta, similarity arc length
    EQUIAFFINE = "Equiaffine"           # u, det(g_u, g_uu) = 1
    ESA_PARAM = "ESAParam"              # t with g(t+eps) = F(eps) g(t)


class Geometry(Enum):
    """Klein geometry a curvature value belongs to."""
    EUCLIDEAN = "Euclidean"
    SIMILARITY = "Similarity"
    EQUIAFFINE = "Equiaffine"


class CurvatureRoute(Enum):
    """How equiaffine curvature is estimated."""
    EUCLIDEAN = "euclidean"      # closed formula in kappa^E and its s-derivatives
    EQUIAFFINE = "equiaffine"    # det(g_uu, g_uuu) after reparametrizing to u


@dataclass(frozen=True)
class PlanarPoint:
    """A point of the plane."""
    x: float
    y: float

    def __post_init__(self):
        if not (np.isfinite(self.x) and np.isfinite(self.y)):
            raise InvalidCurve("Point coordinates must be finite", {"x": self.x, "y": self.y})

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y], dtype=float)

    @classmethod
    def origin(cls) -> "PlanarPoint":
        return cls(0.0, 0.0)


def _frozen_array(values: Any, name: str) -> np.ndarray:
    array = np.array(values, dtype=float)
    if not np.all(np.isfinite(array)):
        raise InvalidCurve(f"{name} contains non-finite values")
    array.setflags(write=False)
    return array


def _check_increasing(params: np.ndarray, name: str) -> None:
    steps = np.diff(params)
    if np.any(steps <= 0):
        bad = int(np.argmax(steps <= 0))
        raise InvalidCurve(
            f"{name} must be strictly increasing",
            {"index": bad, "value": float(params[bad + 1])},
        )


@dataclass(frozen=True, eq=False)
class SampledCurve:
    """
    A discretized planar curve.

    Attributes:
        params: Strictly increasing parameter samples
        points: (n, 2) array of coordinates
        kind: Parameter the samples use
        meta: Provenance (generator family and parameters, or "ingested")
    """
    params: np.ndarray
    points: np.ndarray
    kind: ParamKind = ParamKind.ARBITRARY
    meta: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        params = _frozen_array(self.params, "params")
        points = _frozen_array(self.points, "points")

        if params.ndim != 1 or points.ndim != 2 or points.shape[1] != 2:
            raise InvalidCurve(
                "Expected params of shape (n,) and points of shape (n, 2)",
                {"params": list(params.shape), "points": list(points.shape)},
            )
        if len(params) != len(points):
            raise InvalidCurve(
                "params and points must have equal length",
                {"params": len(params), "points": len(points)},
            )
        if len(params) < MIN_SAMPLES:
            raise TooFewSamples(
                f"A curve needs at least {MIN_SAMPLES} samples",
                {"samples": len(params)},
            )
        _check_increasing(params, "params")

        object.__setattr__(self, "params", params)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "meta", dict(self.meta))

    @classmethod
    def from_xy(cls, params, x, y, kind: ParamKind = ParamKind.ARBITRARY,
                meta: Optional[Dict[str, Any]] = None) -> "SampledCurve":
        """Build a curve from separate coordinate arrays."""
        points = np.column_stack([np.asarray(x, dtype=float), np.asarray(y, dtype=float)])
        return cls(params=params, points=points, kind=kind, meta=meta or {})

    # ==================== Accessors ====================

    def __len__(self) -> int:
        return len(self.params)

    @property
    def x(self) -> np.ndarray:
        return self.points[:, 0]

    @property
    def y(self) -> np.ndarray:
        return self.points[:, 1]

    def point(self, index: int) -> PlanarPoint:
        return PlanarPoint(float(self.points[index, 0]), float(self.points[index, 1]))

    @property
    def span(self) -> float:
        return float(self.params[-1] - self.params[0])

    @property
    def step(self) -> float:
        """Mean parameter step (the grid step on uniform grids)."""
        return self.span / (len(self) - 1)

    def is_uniform(self, rtol: float = 1e-9) -> bool:
        steps = np.diff(self.params)
        return bool(np.all(np.abs(steps - self.step) <= rtol * abs(self.step) + 1e-15))

    def is_closed(self, rtol: float = 1e-9) -> bool:
        """True when the first and last samples coincide."""
        gap = np.linalg.norm(self.points[-1] - self.points[0])
        return bool(gap <= rtol * max(self.bbox_diagonal(), 1e-300))

    def bbox_diagonal(self) -> float:
        extent = self.points.max(axis=0) - self.points.min(axis=0)
        return float(np.hypot(extent[0], extent[1]))

    # ==================== Derived curves ====================

    def with_meta(self, **updates: Any) -> "SampledCurve":
        """Copy with meta entries added or replaced."""
        meta = dict(self.meta)
        meta.update(updates)
        return SampledCurve(self.params, self.points, self.kind, meta)

    def with_params(self, params, kind: Optional[ParamKind] = None, **meta_updates: Any) -> "SampledCurve":
        """Same points relabeled with new parameter values."""
        meta = dict(self.meta)
        meta.update(meta_updates)
        return SampledCurve(params, self.points, kind or self.kind, meta)

    def reversed(self) -> "SampledCurve":
        """Same point set traversed backwards; params keep their span."""
        lo, hi = self.params[0], self.params[-1]
        params = (lo + hi) - self.params[::-1]
        return SampledCurve(params, self.points[::-1], self.kind, self.meta)

    def transformed(self, linear, translation) -> "SampledCurve":
        """Image of the curve under x -> linear @ x + translation."""
        linear = np.asarray(linear, dtype=float)
        translation = np.asarray(translation, dtype=float)
        points = self.points @ linear.T + translation
        return SampledCurve(self.params, points, self.kind, self.meta)

    def summary(self) -> Dict[str, Any]:
        return {
            "samples": len(self),
            "kind": self.kind.value,
            "range": [float(self.params[0]), float(self.params[-1])],
            "family": self.meta.get("family", "ingested"),
        }


@dataclass(frozen=True, eq=False)
class CurvatureProfile:
    """
    Per-sample curvature values in one geometry.

    Attributes:
        params: Strictly increasing parameter values
        kappa: Curvature at each parameter value
        geometry: Euclidean, Similarity or Equiaffine
        kind: Parameter the params are expressed in
    """
    params: np.ndarray
    kappa: np.ndarray
    geometry: Geometry
    kind: ParamKind
    meta: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        params = _frozen_array(self.params, "params")
        kappa = _frozen_array(self.kappa, "kappa")
        if params.shape != kappa.shape or params.ndim != 1:
            raise InvalidCurve(
                "params and kappa must be 1-D arrays of equal length",
                {"params": list(params.shape), "kappa": list(kappa.shape)},
            )
        if len(params) < 1:
            raise TooFewSamples("Curvature profile is empty")
        _check_increasing(params, "params")
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "kappa", kappa)

    def __len__(self) -> int:
        return len(self.params)

    def interior(self, fraction: float) -> "CurvatureProfile":
        """Central part of the profile covering `fraction` of the parameter span."""
        lo, hi = self.params[0], self.params[-1]
        margin = 0.5 * (1.0 - fraction) * (hi - lo)
        mask = (self.params >= lo + margin) & (self.params <= hi - margin)
        return CurvatureProfile(self.params[mask], self.kappa[mask], self.geometry, self.kind, self.meta)

    def at(self, param: float) -> float:
        """Linear interpolation of the profile."""
        return float(np.interp(param, self.params, self.kappa))

    def summary(self) -> Dict[str, Any]:
        return {
            "geometry": self.geometry.value,
            "kind": self.kind.value,
            "samples": len(self),
            "min": float(self.kappa.min()),
            "max": float(self.kappa.max()),
            "mean": float(self.kappa.mean()),
        }


@dataclass(frozen=True)
class ReparamOptions:
    """
    Options for reparametrization.

    Attributes:
        base: Starting value for theta or u (arc length always starts at 0)
        samples: Output sample count, defaults to the input length
    """
    base: float = 0.0
    samples: Optional[int] = None

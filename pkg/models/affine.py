"""
Planar affine transformations.
"""
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from .errors import InvalidSpec


@dataclass(frozen=True, eq=False)
class AffineMap2:
    """
    x -> linear @ x + translation.

    Attributes:
        linear: 2x2 matrix, nonsingular
        translation: 2-vector
    """
    linear: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        linear = np.array(self.linear, dtype=float).reshape(2, 2)
        translation = np.array(self.translation, dtype=float).reshape(2)
        if not (np.all(np.isfinite(linear)) and np.all(np.isfinite(translation))):
            raise InvalidSpec("Affine map entries must be finite")
        if np.linalg.det(linear) == 0.0:
            raise InvalidSpec("Affine map linear part is singular", {"linear": linear.tolist()})
        linear.setflags(write=False)
        translation.setflags(write=False)
        object.__setattr__(self, "linear", linear)
        object.__setattr__(self, "translation", translation)

    @classmethod
    def identity(cls) -> "AffineMap2":
        return cls(np.eye(2), np.zeros(2))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[float]]) -> "AffineMap2":
        """Build from a row-major 2x3 array [[a, b, tx], [c, d, ty]]."""
        rows = np.asarray(rows, dtype=float).reshape(2, 3)
        return cls(rows[:, :2], rows[:, 2])

    @classmethod
    def from_flat(cls, values: Sequence[float]) -> "AffineMap2":
        """Build from (a11, a12, a21, a22, b1, b2)."""
        values = [float(v) for v in values]
        if len(values) != 6:
            raise InvalidSpec("Affine map needs six numbers", {"received": len(values)})
        return cls(np.array(values[:4]).reshape(2, 2), np.array(values[4:]))

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.linear))

    def apply(self, points: np.ndarray) -> np.ndarray:
        """Map an (n, 2) array of points."""
        return np.asarray(points, dtype=float) @ self.linear.T + self.translation

    def compose(self, inner: "AffineMap2") -> "AffineMap2":
        """self o inner."""
        return AffineMap2(self.linear @ inner.linear, self.linear @ inner.translation + self.translation)

    def homogeneous(self) -> np.ndarray:
        """3x3 homogeneous matrix."""
        matrix = np.eye(3)
        matrix[:2, :2] = self.linear
        matrix[:2, 2] = self.translation
        return matrix

    def to_rows(self) -> List[List[float]]:
        return self.homogeneous()[:2].tolist()

    def __repr__(self) -> str:
        return f"AffineMap2(rows={np.round(self.homogeneous()[:2], 6).tolist()})"

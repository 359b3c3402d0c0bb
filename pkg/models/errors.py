"""
Error hierarchy for the curve toolkit.

Domain failures derive from CurveGeometryError and carry a stable code plus a
details dict, so the CLI can emit them as machine-readable JSON. File and
parse failures derive from CurveFormatError instead.
"""
from typing import Any, Dict, Optional


class CurveGeometryError(Exception):
    """
    Base class for every domain error.

    Attributes:
        code: Stable machine-readable error name
        message: Human-readable description
        details: Extra context (sample index, offending value, ...)
    """

    code = "CurveGeometryError"

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        """Convert to the JSON shape written on stderr."""
        return {
            "error": self.code,
            "message": self.message,
            "details": self.details,
        }

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


class CurveFormatError(Exception):
    """Malformed CSV/JSON input or unreadable file."""


# ==================== Curve representation ====================

class InvalidCurve(CurveGeometryError):
    code = "InvalidCurve"


class TooFewSamples(CurveGeometryError):
    code = "TooFewSamples"


# ==================== Reparametrization / curvature ====================

class SignChange(CurveGeometryError):
    code = "SignChange"


class DegenerateIntegrand(CurveGeometryError):
    code = "DegenerateIntegrand"


class DegenerateSpeed(CurveGeometryError):
    code = "DegenerateSpeed"


class VanishingCurvature(CurveGeometryError):
    code = "VanishingCurvature"


class NegativeCurvatureOnEuclideanRoute(CurveGeometryError):
    code = "NegativeCurvatureOnEuclideanRoute"


# ==================== Generators ====================

class InvalidSpec(CurveGeometryError):
    code = "InvalidSpec"


class SingularRange(CurveGeometryError):
    code = "SingularRange"


class NonMonotoneKappa(CurveGeometryError):
    code = "NonMonotoneKappa"


# ==================== Representation formula ====================

class WronskianDrift(CurveGeometryError):
    code = "WronskianDrift"


class DomainContainsSingularity(CurveGeometryError):
    code = "DomainContainsSingularity"


# ==================== Self-affinity checks ====================

class InsufficientOverlap(CurveGeometryError):
    code = "InsufficientOverlap"


class SingularNormalEquations(CurveGeometryError):
    code = "SingularNormalEquations"


class OffGridShift(CurveGeometryError):
    code = "OffGridShift"


class NonpositiveU(CurveGeometryError):
    code = "NonpositiveU"


class MissingSpeedData(CurveGeometryError):
    code = "MissingSpeedData"


class DegenerateLCG(CurveGeometryError):
    code = "DegenerateLCG"


# ==================== Classification ====================

class MixedSign(CurveGeometryError):
    code = "MixedSign"


class PoorFit(CurveGeometryError):
    code = "PoorFit"


class Unclassifiable(CurveGeometryError):
    code = "Unclassifiable"


class PoleInput(CurveGeometryError):
    code = "PoleInput"


# ==================== Plotting ====================

class EmptyInput(CurveGeometryError):
    code = "EmptyInput"

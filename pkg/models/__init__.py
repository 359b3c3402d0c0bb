"""
Data models for the curve toolkit.
"""
from .affine import AffineMap2
from .classes import ClassLabel, Conic, CurveClass, ESACoefficients, OmegaDirection
from .curve import (
    CurvatureProfile,
    CurvatureRoute,
    Geometry,
    ParamKind,
    PlanarPoint,
    ReparamOptions,
    SampledCurve,
)
from .errors import CurveFormatError, CurveGeometryError
from .family import (
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
from .laws import BasisPair, CurvatureLaw, EsaRegime, EulerLaw
from .reports import (
    AffineGroup,
    ESAReport,
    LCGData,
    MSAReport,
    ShiftDerivativeReport,
    ShiftFit,
    ThetaAffinityReport,
    Verdict,
)
from .run_config import Command, RunConfig

__all__ = [
    "AffineMap2",
    "ClassLabel", "Conic", "CurveClass", "ESACoefficients", "OmegaDirection",
    "CurvatureProfile", "CurvatureRoute", "Geometry", "ParamKind", "PlanarPoint",
    "ReparamOptions", "SampledCurve",
    "CurveFormatError", "CurveGeometryError",
    "LAC", "EsaClass", "FamilySpec", "LogGraph", "LogSpiral", "PowerGraph",
    "Quadratic", "Sign", "XLogXGraph",
    "BasisPair", "CurvatureLaw", "EsaRegime", "EulerLaw",
    "AffineGroup", "ESAReport", "LCGData", "MSAReport", "ShiftDerivativeReport",
    "ShiftFit", "ThetaAffinityReport", "Verdict",
    "Command", "RunConfig",
]

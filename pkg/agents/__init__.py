"""
Agents of the aesthetica curve toolkit.

Each agent wraps one concern (I/O, generation, curvature, affinity checks,
classification, plotting); the coordinator runs CLI commands across them.
"""
from .base_agent import BaseAgent
from .coordinator import CoordinatorAgent
from .curve_io import CurveIOAgent
from .curve_generator import CurveGeneratorAgent
from .curvature_analyzer import CurvatureAnalyzerAgent
from .affinity_validator import AffinityValidatorAgent
from .classifier import ClassifierAgent
from .plot_generator import PlotGeneratorAgent

__all__ = [
    "BaseAgent",
    "CoordinatorAgent",
    "CurveIOAgent",
    "CurveGeneratorAgent",
    "CurvatureAnalyzerAgent",
    "AffinityValidatorAgent",
    "ClassifierAgent",
    "PlotGeneratorAgent",
]

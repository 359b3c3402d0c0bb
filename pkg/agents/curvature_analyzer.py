"""
Curvature Analyzer Agent - Curvature profiles and reparametrizations.
"""
from typing import Optional, Union

from .base_agent import BaseAgent
from communication.message import MessageType
from communication.message_bus import MessageBus
from geometry.core import (
    equiaffine_curvature,
    euclidean_curvature,
    reparametrize,
    resample_uniform,
    similarity_curvature,
)
from models.curve import CurvatureProfile, CurvatureRoute, Geometry, ParamKind, ReparamOptions, SampledCurve


class CurvatureAnalyzerAgent(BaseAgent):
    """
    Agent responsible for curvature estimation.

    Responsibilities:
    - Estimate kappa in the Euclidean, similarity or equiaffine geometry
    - Reparametrize curves by arc length, turning angle or equiaffine arc length
    - Resample curves onto uniform grids
    """

    def __init__(self, message_bus: MessageBus):
        super().__init__("CurvatureAnalyzer", message_bus)

    def execute(self, curve: SampledCurve, geometry: Geometry = Geometry.EQUIAFFINE,
                route: CurvatureRoute = CurvatureRoute.EQUIAFFINE,
                reparam: Optional[ParamKind] = None, samples: Optional[int] = None,
                base: float = 0.0, **kwargs) -> Union[CurvatureProfile, SampledCurve]:
        """
        Either a curvature profile or, when `reparam` or `samples` is set,
        a reparametrized / resampled curve.

        Args:
            curve: Input curve
            geometry: Geometry of the profile
            route: Estimation route for equiaffine curvature
            reparam: Target parameter for reparametrization
            samples: Output sample count
            base: Start value of theta or u
        """
        if reparam is not None:
            self.log(f"Reparametrizing {curve.kind.value} → {reparam.value}")
            result = reparametrize(curve, reparam, ReparamOptions(base=base, samples=samples))
            if result.meta.get("orientation_flipped"):
                self.log("Orientation reversed to make the integrand positive", "warning")
            self.send(MessageType.CURVE, result.summary(), receiver="Coordinator")
            return result
        if samples is not None:
            self.log(f"Resampling onto {samples} uniform samples")
            result = resample_uniform(curve, samples)
            self.send(MessageType.CURVE, result.summary(), receiver="Coordinator")
            return result

        self.log(f"Estimating {geometry.value} curvature")
        if geometry == Geometry.EUCLIDEAN:
            profile = euclidean_curvature(curve)
        elif geometry == Geometry.SIMILARITY:
            profile = similarity_curvature(curve)
        else:
            profile = equiaffine_curvature(curve, route)
        self.send(MessageType.PROFILE, profile.summary(), receiver="Coordinator")
        self.log(f"{len(profile)} curvature samples in [{profile.kappa.min():.4g}, {profile.kappa.max():.4g}]",
                 "success")
        return profile

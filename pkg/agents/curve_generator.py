"""
Curve Generator Agent - Samples curve families.
"""
from typing import List, Optional

from .base_agent import BaseAgent
from communication.message import MessageType
from communication.message_bus import MessageBus
from geometry.affinity import esa_parameter_transform
from geometry.generators import generate, msa_parametrization, reference_family_curves
from models.curve import SampledCurve
from models.errors import InvalidSpec
from models.family import LAC, EsaClass, FamilySpec


def esa_origin(curve: SampledCurve) -> float:
    """Singular point -eta/xi of a generated ESA-class curve, 0 for anything else."""
    spec = curve.meta.get("spec") or {}
    if spec.get("family") != EsaClass.name:
        return 0.0
    return -float(spec.get("eta", 0.0)) / float(spec["xi"])


def to_esa_parameter(curve: SampledCurve, k: float, l: float = 0.0) -> SampledCurve:
    """Measure u from the singular point, then resample in t = (log u - l) / k."""
    origin = esa_origin(curve)
    if origin:
        curve = curve.with_params(curve.params - origin, esa_origin=origin)
    return esa_parameter_transform(curve, k, l)


class CurveGeneratorAgent(BaseAgent):
    """
    Agent responsible for producing sampled curves.

    Responsibilities:
    - Sample any family of FamilySpec in its natural parameter
    - Produce the MSA parametrization of log-aesthetic curves
    - Re-sample ESA-class curves in their ESA parameter
    - Provide the reference families for plotting
    """

    def __init__(self, message_bus: MessageBus):
        super().__init__("CurveGenerator", message_bus)
        self.last_curve: Optional[SampledCurve] = None

    def execute(self, spec: FamilySpec, msa: bool = False,
                esa_k: Optional[float] = None, esa_l: float = 0.0, **kwargs) -> SampledCurve:
        """
        Args:
            spec: Family and sampling
            msa: Sample a LAC in its MSA parameter instead of arc length
            esa_k: Re-sample an ESA-class curve in t with u = exp(k t + l)
            esa_l: Offset l of the ESA parameter
        """
        self.log(f"Generating {spec.family.name} on [{spec.lo:g}, {spec.hi:g}] with {spec.n} samples")
        if msa:
            if not isinstance(spec.family, LAC):
                raise InvalidSpec("MSA sampling applies to the lac family only", {"family": spec.family.name})
            curve = msa_parametrization(spec)
        else:
            curve = generate(spec)
        if esa_k is not None:
            curve = to_esa_parameter(curve, esa_k, esa_l)

        self.last_curve = curve
        self.send(MessageType.CURVE, curve.summary(), receiver="Coordinator")
        self.log(f"Generated {len(curve)} samples in {curve.kind.value}", "success")
        return curve

    def reference(self, deform: bool = False) -> List[SampledCurve]:
        """The four reference families anchored at the origin."""
        curves = reference_family_curves(deform=deform)
        self.log(f"Prepared {len(curves)} reference curves (deformed={deform})")
        return curves

"""
Classifier Agent - Assigns a curve to one of the five ESA classes.
"""
from typing import Optional

from .base_agent import BaseAgent
from communication.message import MessageType
from communication.message_bus import MessageBus
from geometry.classify import classify
from models.classes import ClassLabel
from models.curve import CurvatureRoute, SampledCurve


class ClassifierAgent(BaseAgent):
    """
    Agent responsible for classification.

    Responsibilities:
    - Fit the equiaffine curvature law and dispatch to a class
    - Fall back to the point fit for noisy samples when allowed
    """

    def __init__(self, message_bus: MessageBus):
        super().__init__("Classifier", message_bus)
        self.last_label: Optional[ClassLabel] = None

    def execute(self, curve: SampledCurve, route: CurvatureRoute = CurvatureRoute.EQUIAFFINE,
                robust: bool = True, **kwargs) -> ClassLabel:
        self.log(f"Classifying {len(curve)} samples via the {route.value} route")
        label = classify(curve, route, robust)
        if label.method != "curvature":
            self.log("Curvature fit failed; label comes from the point fit", "warning")
        self.last_label = label
        self.send(MessageType.VALIDATION_RESULT, label.to_dict(), receiver="Coordinator")
        self.log(f"Class: {label.name}", "success")
        return label

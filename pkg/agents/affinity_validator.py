"""
Affinity Validator Agent - Runs the self-affinity checks on a curve.
"""
from typing import Any, Dict, Optional, Sequence

from .base_agent import BaseAgent
from communication.message import MessageType
from communication.message_bus import MessageBus
from geometry.affinity import esa_check, lcg, msa_check, shift_derivative_check, theta_affinity_check
from geometry.numerics import snap_to_grid
from models.curve import ParamKind, SampledCurve
from models.reports import AffineGroup, ESAReport, Verdict


class AffinityValidatorAgent(BaseAgent):
    """
    Agent responsible for the self-affinity tests.

    Responsibilities:
    - Extendable self-affinity over a shift grid (with shift-derivative identities)
    - Miura self-affinity ratio tests and the turning-angle rate test
    - Logarithmic curvature graphs
    """

    CHECKS = ("esa", "msa", "theta", "lcg")

    def __init__(self, message_bus: MessageBus):
        super().__init__("AffinityValidator", message_bus)
        self.reports: Dict[str, Any] = {}

    def execute(self, check: str, curve: SampledCurve, eps_grid: Sequence[float] = (),
                alpha: float = 1.0, group: AffineGroup = AffineGroup.FULL_AFFINE,
                esa_k: Optional[float] = None, esa_l: float = 0.0, **kwargs) -> Any:
        """
        Run one check.

        Args:
            check: esa, msa, theta or lcg
            curve: Curve on a uniform grid of the parameter under test
            eps_grid: Shifts (snapped to the grid for esa and theta)
            alpha: LAC slope for msa and theta
            group: Group of the fitted maps for esa
            esa_k, esa_l: Parameter map of an ESA-parameter curve; enables the
                shift-derivative identities in the esa check
        """
        if check not in self.CHECKS:
            raise ValueError(f"Unknown check '{check}', expected one of {self.CHECKS}")

        if check == "lcg":
            self.log("Building logarithmic curvature graph")
            report = lcg(curve)
            self.log(f"LCG slope {report.slope:.6g} (R² = {report.r_squared:.6f})", "success")
        elif check == "msa":
            self.log(f"MSA ratio test with alpha = {alpha:g}")
            report = msa_check(curve, alpha, eps_grid)
            self._log_verdict("MSA", report.verdict)
        elif check == "theta":
            eps = snap_to_grid(eps_grid, curve.step)
            self.log(f"Turning-angle rate test with alpha = {alpha:g} on {len(eps)} shifts")
            report = theta_affinity_check(curve, alpha, eps)
            self._log_verdict("theta rate", report.verdict)
        else:
            report = self._esa(curve, eps_grid, group, esa_k, esa_l)

        self.reports[check] = report
        self.send(MessageType.VALIDATION_RESULT, {"check": check, **report.summary()}, receiver="Coordinator")
        return report

    def _esa(self, curve: SampledCurve, eps_grid: Sequence[float], group: AffineGroup,
             esa_k: Optional[float], esa_l: float) -> ESAReport:
        eps = snap_to_grid(eps_grid, curve.step)
        self.log(f"Shifts snapped to multiples of the grid step {curve.step:.6g}", "debug")
        self.log(f"ESA test ({group.value}) on {len(eps)} shifts")
        report = esa_check(curve, eps, group)
        self._log_verdict(f"ESA ({report.verdict.value})", report.verdict == Verdict.ESA)

        if esa_k is not None and curve.kind == ParamKind.ESA_PARAM:
            identities = shift_derivative_check(curve, esa_k, esa_l)
            self.reports["shift_derivatives"] = identities
            self.log(
                f"Shift-derivative identities: second {identities.second_order_error:.2e}, "
                f"third {identities.third_order_error:.2e}",
                "success" if identities.passed else "warning",
            )
        return report

    def _log_verdict(self, what: str, passed: bool) -> None:
        self.log(f"{what}: {'✅ passed' if passed else '❌ failed'}", "success" if passed else "warning")

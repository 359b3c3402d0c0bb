"""
Coordinator Agent - Orchestrates one CLI command across the curve agents.

This module implements the central coordinator with:
- Agent lifecycle management
- Phase-by-phase execution of a RunConfig
- Performance profiling
- Report assembly for the JSON artifacts
"""
import time
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

from .base_agent import BaseAgent
from .affinity_validator import AffinityValidatorAgent
from .classifier import ClassifierAgent
from .curvature_analyzer import CurvatureAnalyzerAgent
from .curve_generator import CurveGeneratorAgent, to_esa_parameter
from .curve_io import CurveIOAgent
from .plot_generator import PlotGeneratorAgent

from benchmark import profile_function
from communication.message import Message, MessageType
from communication.message_bus import MessageBus
from models.curve import CurvatureProfile, ParamKind, SampledCurve
from models.reports import AffineGroup, ESAReport
from models.run_config import Command, RunConfig


class CoordinatorAgent(BaseAgent):
    """
    Master coordinator that runs a command through the pipeline agents.

    Responsibilities:
    - Start and stop every agent
    - Load or generate the input curve
    - Dispatch to analysis, validation, classification or plotting
    - Write artifacts and return a summary for the CLI
    """

    def __init__(self, message_bus: MessageBus, log_dir: str = "output"):
        super().__init__("Coordinator", message_bus)
        self.log_dir = log_dir

        self.curve_io = CurveIOAgent(message_bus)
        self.generator = CurveGeneratorAgent(message_bus)
        self.analyzer = CurvatureAnalyzerAgent(message_bus)
        self.validator = AffinityValidatorAgent(message_bus)
        self.classifier = ClassifierAgent(message_bus)
        self.plotter = PlotGeneratorAgent(message_bus)

        self.workflow_log: List[Dict[str, Any]] = []
        self.start_time: Optional[float] = None

    @property
    def agents(self) -> List[BaseAgent]:
        return [self.curve_io, self.generator, self.analyzer, self.validator, self.classifier, self.plotter]

    @profile_function
    def execute(self, run_config: RunConfig, **kwargs) -> Dict[str, Any]:
        """
        Run one command.

        Returns:
            {command, outputs, summary, report?, elapsed_seconds, log_file}
        """
        self.start_time = time.time()
        log_file = BaseAgent.setup_file_logging(self.log_dir)
        self.log("=" * 60)
        self.log(f"🚀 {run_config.command.value.upper()}")
        self.log(f"📝 Log file: {log_file}")
        self.log("=" * 60)
        if BaseAgent._file_logger:
            BaseAgent._file_logger.info(f"Run config: {run_config.summary()}")

        for agent in self.agents:
            agent.startup()

        handlers = {
            Command.GENERATE: self._generate,
            Command.ANALYZE: self._analyze,
            Command.CHECK_ESA: self._check_esa,
            Command.CHECK_MSA: self._check_msa,
            Command.LCG: self._lcg,
            Command.CLASSIFY: self._classify,
            Command.PLOT: self._plot,
        }
        try:
            results = handlers[run_config.command](run_config)
            results.update({
                "command": run_config.command.value,
                "outputs": [str(p) for p in self.curve_io.written],
                "elapsed_seconds": time.time() - self.start_time,
                "log_file": log_file,
            })
            self.broadcast({"status": "complete", "command": run_config.command.value}, MessageType.COMPLETE)
            return results
        except Exception as e:
            self.log(f"❌ {run_config.command.value} failed: {e}", "error")
            self._handle_error(e, run_config.command.value)
            raise
        finally:
            for agent in reversed(self.agents):
                try:
                    agent.shutdown()
                except Exception as e:
                    self.log(f"Warning: Error shutting down {agent.name}: {e}", "warning")
            if BaseAgent._file_logger:
                elapsed = time.time() - self.start_time
                BaseAgent._file_logger.info("=" * 70)
                BaseAgent._file_logger.info(f"SESSION ENDED - Total time: {elapsed:.2f}s")
                BaseAgent._file_logger.info("=" * 70)
            BaseAgent.close_file_logging()

    # ==================== Phases ====================

    def _log_phase(self, phase_name: str) -> None:
        self.log(f"{'─' * 50}")
        self.log(f"📍 {phase_name}")
        self.workflow_log.append({"phase": phase_name, "timestamp": datetime.now().isoformat(), "type": "start"})

    def _log_phase_complete(self, message: str) -> None:
        self.log(f"✓ {message}", "success")
        self.workflow_log.append({"message": message, "timestamp": datetime.now().isoformat(), "type": "complete"})

    def _run(self, agent: BaseAgent, **kwargs) -> Any:
        result = agent.safe_execute(**kwargs)
        if result is None:
            raise RuntimeError(f"{agent.name} failed; see the session log")
        return result

    def _load(self, run_config: RunConfig) -> SampledCurve:
        self._log_phase("LOAD CURVE")
        curve = self._run(self.curve_io, action="read", path=run_config.input_path)
        self._log_phase_complete(f"{len(curve)} samples, kind {curve.kind.value}")
        return curve

    def _report(self, run_config: RunConfig, metrics: Dict[str, Any], **extra: Any) -> Dict[str, Any]:
        report = {
            "command": run_config.command.name.lower().replace("_", "-"),
            "input": str(run_config.input_path) if run_config.input_path else None,
            "metrics": metrics,
        }
        report.update({k: v for k, v in extra.items() if v is not None})
        return report

    # ==================== Commands ====================

    def _generate(self, run_config: RunConfig) -> Dict[str, Any]:
        self._log_phase("GENERATE")
        curve = self._run(self.generator,
            spec=run_config.family,
            msa=run_config.option("msa", False),
            esa_k=run_config.option("esa_k"),
            esa_l=run_config.option("esa_l", 0.0),
        )
        self._log_phase_complete(f"{len(curve)} samples in {curve.kind.value}")
        self._log_phase("EXPORT")
        self._run(self.curve_io, action="curve", curve=curve, path=run_config.output_path)
        self._log_phase_complete(str(run_config.output_path))
        return {"summary": curve.summary()}

    def _analyze(self, run_config: RunConfig) -> Dict[str, Any]:
        curve = self._load(run_config)
        self._log_phase("ANALYZE")
        result = self._run(self.analyzer,
            curve=curve,
            geometry=run_config.option("geometry"),
            route=run_config.option("route"),
            reparam=run_config.option("reparam"),
            samples=run_config.option("samples"),
            base=run_config.option("base", 0.0),
        )
        self._log_phase("EXPORT")
        if isinstance(result, CurvatureProfile):
            self._run(self.curve_io, action="profile", profile=result, path=run_config.output_path)
        else:
            self._run(self.curve_io, action="curve", curve=result, path=run_config.output_path)
        self._log_phase_complete(str(run_config.output_path))
        return {"summary": result.summary()}

    def _esa_curve(self, curve: SampledCurve, run_config: RunConfig) -> SampledCurve:
        """Bring ESA-class curves (or any curve in u when --esa-k is given) into the ESA parameter."""
        esa_k = run_config.option("esa_k")
        is_esa_family = curve.meta.get("family") == "esa"
        if curve.kind == ParamKind.EQUIAFFINE and (esa_k is not None or is_esa_family):
            k = 1.0 if esa_k is None else esa_k
            self.log(f"Resampling in the ESA parameter t with u = exp({k:g} t + {run_config.option('esa_l', 0.0):g})")
            return to_esa_parameter(curve, k, run_config.option("esa_l", 0.0))
        return curve

    def _check_esa(self, run_config: RunConfig) -> Dict[str, Any]:
        curve = self._esa_curve(self._load(run_config), run_config)
        self._log_phase("CHECK ESA")
        report: ESAReport = self._run(self.validator,
            check="esa",
            curve=curve,
            eps_grid=run_config.option("eps", ()),
            group=run_config.option("group", AffineGroup.FULL_AFFINE),
            esa_k=curve.meta.get("esa_k"),
            esa_l=curve.meta.get("esa_l", 0.0),
        )
        self._log_phase_complete(f"Verdict {report.verdict.value}, max residual {report.max_residual:.3e}")

        metrics = report.summary()
        metrics["residuals"] = report.residuals.tolist()
        metrics["dets"] = report.dets.tolist()
        identities = self.validator.reports.get("shift_derivatives") if curve.meta.get("esa_k") else None
        if identities is not None:
            metrics["shift_derivatives"] = identities.summary()
        payload = self._report(
            run_config, metrics,
            verdict=report.verdict.value,
            grid=report.eps_grid.tolist(),
            maps=[m.to_rows() for m in report.maps],
        )
        self._run(self.curve_io, action="report", report=payload, path=run_config.output_path)
        return {"summary": {k: metrics[k] for k in ("verdict", "max_residual", "composition_error", "k_estimate")},
                "report": payload}

    def _check_msa(self, run_config: RunConfig) -> Dict[str, Any]:
        curve = self._load(run_config)
        law = curve.meta.get("msa") or {}
        alpha = run_config.option("alpha")
        alpha = law.get("alpha", 1.0) if alpha is None else alpha
        eps = run_config.option("eps", ())

        self._log_phase("CHECK MSA")
        report = self._run(self.validator, check="msa", curve=curve, eps_grid=eps, alpha=alpha)
        metrics = {"msa": report.summary()}
        verdict = report.verdict
        if run_config.option("theta", False):
            theta = self._run(self.validator, check="theta", curve=curve, eps_grid=eps, alpha=alpha)
            metrics["theta"] = theta.summary()
            verdict = verdict and theta.verdict
        self._log_phase_complete(f"MSA {'holds' if verdict else 'fails'} for alpha = {alpha:g}")

        payload = self._report(run_config, metrics, verdict="MSA" if verdict else "NotMSA",
                               grid=list(report.eps_grid))
        self._run(self.curve_io, action="report", report=payload, path=run_config.output_path)
        return {"summary": {"verdict": payload["verdict"], "alpha": alpha,
                            "kappa_ratio_error": report.kappa_ratio_error,
                            "speed_ratio_error": report.speed_ratio_error},
                "report": payload}

    def _lcg(self, run_config: RunConfig) -> Dict[str, Any]:
        curve = self._load(run_config)
        self._log_phase("LOGARITHMIC CURVATURE GRAPH")
        data = self._run(self.validator, check="lcg", curve=curve)
        fitted = run_config.option("fit", False)
        self._run(self.curve_io, action="lcg", data=data, path=run_config.output_path, fitted=fitted)
        self._log_phase_complete(f"{len(data.points)} graph points")
        summary = data.summary() if fitted else {"points": len(data.points)}
        return {"summary": summary}

    def _classify(self, run_config: RunConfig) -> Dict[str, Any]:
        curve = self._load(run_config)
        self._log_phase("CLASSIFY")
        label = self._run(self.classifier,
            curve=curve,
            route=run_config.option("route"),
            robust=run_config.option("robust", True),
        )
        self._log_phase_complete(label.name)
        payload = self._report(run_config, label.to_dict(), verdict=label.name)
        self._run(self.curve_io, action="report", report=payload, path=run_config.output_path)
        return {"summary": {"class": label.name, "method": label.method,
                            **label.coefficients.to_dict()},
                "report": payload}

    def _plot(self, run_config: RunConfig) -> Dict[str, Any]:
        curves: List[SampledCurve] = []
        transforms = None
        if run_config.option("reference", False):
            self._log_phase("REFERENCE FAMILIES")
            curves.extend(self.generator.reference(deform=run_config.option("deform", False)))
        paths = ([run_config.input_path] if run_config.input_path else []) + list(run_config.option("extra_inputs", []))
        for path in paths:
            curves.append(self._run(self.curve_io, action="read", path=Path(path)))
        affine = run_config.option("affine")
        if affine is not None:
            transforms = [affine] * len(curves)

        self._log_phase("RENDER")
        document = self._run(self.plotter, curves=curves, transforms=transforms)
        self._run(self.curve_io, action="svg", document=document, path=run_config.output_path)
        self._log_phase_complete(f"{len(curves)} path(s)")
        return {"summary": {"paths": len(curves), "families": [c.meta.get("family", "ingested") for c in curves]}}

    # ==================== Messages ====================

    def _on_request(self, message: Message) -> None:
        if isinstance(message.content, dict) and message.content.get("type") == "get_workflow_log":
            self.respond(message, {"log": self.workflow_log})

    def _on_data(self, message: Message) -> None:
        self.workflow_log.append({
            "from": message.sender,
            "type": "data",
            "content_summary": message.preview(),
            "timestamp": datetime.now().isoformat(),
        })

"""
Curve I/O Agent - Reads and writes curve CSVs, profiles, reports and SVGs.

Every file is written to a temporary sibling first and moved into place with
os.replace, so a failed command never leaves a partial artifact behind.
"""
import io
import json
import math
import os
import re
import tempfile
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np
import pandas as pd

from .base_agent import BaseAgent
from communication.message import MessageType
from communication.message_bus import MessageBus
from models.curve import CurvatureProfile, ParamKind, SampledCurve
from models.errors import CurveFormatError
from models.reports import LCGData

FLOAT_FORMAT = "%.17g"
CURVE_COLUMNS = ["param", "x", "y"]
PROFILE_COLUMNS = ["param", "kappa"]
LCG_COLUMNS = ["neg_log_kappa", "log_ratio"]

_HEADER = re.compile(r"^#\s*kind=(?P<kind>\S+)\s+family=(?P<family>\S+)(?:\s+meta=(?P<meta>.*))?$")


def _jsonable(value: Any) -> Any:
    """Plain JSON types; non-finite floats become null."""
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, (np.floating, float)):
        return float(value) if math.isfinite(value) else None
    if isinstance(value, Path):
        return str(value)
    return value


def canonical_json(value: Any, indent: Optional[int] = None) -> str:
    """Sorted-key JSON; compact unless indent is given."""
    separators = (",", ":") if indent is None else (",", ": ")
    return json.dumps(_jsonable(value), sort_keys=True, separators=separators,
                      indent=indent, allow_nan=False)


def atomic_write(path: Path, text: str) -> Path:
    """Write text to path via a temporary file in the same directory."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def _frame_text(frame: pd.DataFrame, comment: Optional[str]) -> str:
    buffer = io.StringIO()
    if comment:
        buffer.write(comment + "\n")
    frame.to_csv(buffer, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return buffer.getvalue()


def curve_to_csv(curve: SampledCurve) -> str:
    """CSV text of a curve: metadata comment then param,x,y rows."""
    family = str(curve.meta.get("family", "ingested")).replace(" ", "_")
    comment = f"# kind={curve.kind.value} family={family} meta={canonical_json(curve.meta)}"
    frame = pd.DataFrame({"param": curve.params, "x": curve.x, "y": curve.y}, columns=CURVE_COLUMNS)
    return _frame_text(frame, comment)


def _parse_header(line: str) -> Dict[str, Any]:
    match = _HEADER.match(line.strip())
    if not match:
        raise CurveFormatError(f"Malformed metadata line: {line.strip()[:80]}")
    try:
        kind = ParamKind(match.group("kind"))
    except ValueError as e:
        raise CurveFormatError(f"Unknown parameter kind '{match.group('kind')}'") from e
    meta: Dict[str, Any] = {"family": match.group("family")}
    if match.group("meta"):
        try:
            meta = json.loads(match.group("meta"))
        except json.JSONDecodeError as e:
            raise CurveFormatError(f"Metadata is not valid JSON: {e}") from e
        if not isinstance(meta, dict):
            raise CurveFormatError("Metadata must be a JSON object")
    return {"kind": kind, "meta": meta}


def curve_from_csv(text: str) -> SampledCurve:
    """
    Parse curve CSV text.

    The metadata comment is optional; without it the curve is Arbitrary and
    ingested. A file with only x,y columns is parametrized by sample index.
    """
    lines = text.splitlines(keepends=True)
    header: Dict[str, Any] = {"kind": ParamKind.ARBITRARY, "meta": {"family": "ingested"}}
    if lines and lines[0].startswith("#"):
        header = _parse_header(lines[0])
        lines = lines[1:]
    try:
        frame = pd.read_csv(io.StringIO("".join(lines)), float_precision="round_trip")
    except (pd.errors.ParserError, pd.errors.EmptyDataError, ValueError) as e:
        raise CurveFormatError(f"Unreadable curve CSV: {e}") from e

    frame.columns = [str(c).strip() for c in frame.columns]
    if not {"x", "y"} <= set(frame.columns):
        raise CurveFormatError("Curve CSV needs columns x and y")
    try:
        numeric = frame.apply(pd.to_numeric, errors="raise").astype(float)
    except (ValueError, TypeError) as e:
        raise CurveFormatError(f"Non-numeric value in curve CSV: {e}") from e
    if numeric.isna().to_numpy().any():
        raise CurveFormatError("Curve CSV has empty cells")
    params = numeric["param"].to_numpy() if "param" in numeric else np.arange(len(numeric), dtype=float)
    return SampledCurve.from_xy(params, numeric["x"].to_numpy(), numeric["y"].to_numpy(),
                                kind=header["kind"], meta=header["meta"])


class CurveIOAgent(BaseAgent):
    """
    Agent responsible for every file the pipeline reads or writes.

    Responsibilities:
    - Parse curve CSVs into SampledCurve
    - Write curves, curvature profiles and LCG tables as CSV
    - Write JSON reports and SVG documents
    """

    def __init__(self, message_bus: MessageBus):
        super().__init__("CurveIO", message_bus)
        self.written: list = []

    def execute(self, action: str = "read", **kwargs) -> Any:
        """
        Dispatch one I/O action.

        Args:
            action: read, curve, profile, lcg, report or svg
        """
        actions = {
            "read": self.read_curve,
            "curve": self.write_curve,
            "profile": self.write_profile,
            "lcg": self.write_lcg,
            "report": self.write_report,
            "svg": self.write_svg,
        }
        if action not in actions:
            raise ValueError(f"Unknown I/O action: {action}")
        return actions[action](**kwargs)

    def read_curve(self, path: Path) -> SampledCurve:
        """Load a curve CSV."""
        path = Path(path)
        self.log(f"Reading {path}")
        try:
            text = path.read_text(encoding="utf-8")
        except UnicodeDecodeError as e:
            raise CurveFormatError(f"{path} is not a text file") from e
        curve = curve_from_csv(text)
        self.send(MessageType.CURVE, curve.summary(), receiver="Coordinator")
        self.log(f"Loaded {len(curve)} samples ({curve.kind.value})", "success")
        return curve

    def _written(self, path: Path) -> Path:
        self.written.append(path)
        self.send(MessageType.DATA, {"written": str(path)}, receiver="Coordinator")
        self.log(f"Wrote {path}", "success")
        return path

    def write_curve(self, curve: SampledCurve, path: Path) -> Path:
        return self._written(atomic_write(path, curve_to_csv(curve)))

    def write_profile(self, profile: CurvatureProfile, path: Path) -> Path:
        comment = f"# geometry={profile.geometry.value} kind={profile.kind.value}"
        frame = pd.DataFrame({"param": profile.params, "kappa": profile.kappa}, columns=PROFILE_COLUMNS)
        return self._written(atomic_write(path, _frame_text(frame, comment)))

    def write_lcg(self, data: LCGData, path: Path, fitted: bool = False) -> Path:
        comment = None
        if fitted:
            comment = (f"# slope={data.slope:.17g} intercept={data.intercept:.17g} "
                       f"r_squared={data.r_squared:.17g}")
        frame = pd.DataFrame(np.asarray(data.points), columns=LCG_COLUMNS)
        return self._written(atomic_write(path, _frame_text(frame, comment)))

    def write_report(self, report: Dict[str, Any], path: Path) -> Path:
        """JSON report {command, input, verdict?, metrics, grid?, maps?}."""
        return self._written(atomic_write(path, canonical_json(report, indent=2) + "\n"))

    def write_svg(self, document: str, path: Path) -> Path:
        return self._written(atomic_write(path, document))

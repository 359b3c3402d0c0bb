"""
Plot Generator Agent - Renders curves as a single SVG document.

Line styles follow the reference-family legend: solid for the power graph,
dotted for the logarithmic spiral, dashed for the log graph and dash-dot for
the x log x graph. Any other family is drawn solid.
"""
import xml.etree.ElementTree as ET
from typing import List, Optional, Sequence

import numpy as np

from .base_agent import BaseAgent
from communication.message_bus import MessageBus
from communication.message import MessageType
from models.affine import AffineMap2
from models.curve import SampledCurve
from models.errors import EmptyInput, InvalidSpec

SVG_NS = "http://www.w3.org/2000/svg"
CANVAS_WIDTH = 800
PADDING = 0.05
STROKE_FRACTION = 0.004

# Dash patterns in multiples of the stroke width
DASH_PATTERNS = {
    "power": None,
    "logspiral": (1.0, 3.0),
    "log": (6.0, 4.0),
    "xlogx": (6.0, 3.0, 1.0, 3.0),
}
PALETTE = ("#1f3b73", "#b3261e", "#2e7d32", "#6a1b9a", "#ef6c00", "#00838f")


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def _path_data(points: np.ndarray) -> str:
    head = f"M{_fmt(points[0, 0])},{_fmt(points[0, 1])}"
    tail = " ".join(f"L{_fmt(x)},{_fmt(y)}" for x, y in points[1:])
    return f"{head} {tail}"


def render_svg(curves: Sequence[SampledCurve],
               transforms: Optional[Sequence[Optional[AffineMap2]]] = None,
               width: int = CANVAS_WIDTH) -> str:
    """
    One SVG 1.1 document with a path per curve.

    The y axis points up. The viewBox is the padded bounding box of every
    (transformed) curve; the pixel height follows its aspect ratio.

    Args:
        curves: Curves to draw, in order
        transforms: Optional affine map per curve (None entries draw as is)
        width: Pixel width of the canvas

    Raises:
        EmptyInput: No curves
        InvalidSpec: transforms does not match curves in length
    """
    if not curves:
        raise EmptyInput("Nothing to plot")
    if transforms is not None and len(transforms) != len(curves):
        raise InvalidSpec("Need one transform per curve", {"curves": len(curves), "transforms": len(transforms)})

    drawn: List[np.ndarray] = []
    for index, curve in enumerate(curves):
        affine = transforms[index] if transforms is not None else None
        drawn.append(affine.apply(curve.points) if affine is not None else np.asarray(curve.points))

    stacked = np.vstack(drawn)
    lo, hi = stacked.min(axis=0), stacked.max(axis=0)
    extent = hi - lo
    size = float(max(extent.max(), 1e-12))
    extent = np.where(extent > 0, extent, size)
    center = 0.5 * (lo + hi)
    lo, hi = center - 0.5 * extent, center + 0.5 * extent
    pad = PADDING * size
    view_x, view_y = lo[0] - pad, -(hi[1] + pad)
    view_w, view_h = extent[0] + 2 * pad, extent[1] + 2 * pad
    height = max(1, int(round(width * view_h / view_w)))
    stroke = STROKE_FRACTION * float(np.hypot(view_w, view_h))

    root = ET.Element("svg", {
        "xmlns": SVG_NS,
        "version": "1.1",
        "width": str(width),
        "height": str(height),
        "viewBox": " ".join(_fmt(v) for v in (view_x, view_y, view_w, view_h)),
    })
    group = ET.SubElement(root, "g", {
        "transform": "scale(1,-1)",
        "fill": "none",
        "stroke-linejoin": "round",
        "stroke-linecap": "round",
    })
    for index, (curve, points) in enumerate(zip(curves, drawn)):
        family = str(curve.meta.get("family", "ingested"))
        attributes = {
            "d": _path_data(points),
            "stroke": PALETTE[index % len(PALETTE)],
            "stroke-width": _fmt(stroke),
        }
        pattern = DASH_PATTERNS.get(family)
        if pattern:
            attributes["stroke-dasharray"] = ",".join(_fmt(stroke * p) for p in pattern)
        path = ET.SubElement(group, "path", attributes)
        ET.SubElement(path, "title").text = family

    body = ET.tostring(root, encoding="unicode")
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + body + "\n"


class PlotGeneratorAgent(BaseAgent):
    """
    Agent responsible for SVG figures.

    Responsibilities:
    - Draw input curves or the reference families with family line styles
    - Apply optional per-curve affine maps
    """

    def __init__(self, message_bus: MessageBus):
        super().__init__("PlotGenerator", message_bus)

    def execute(self, curves: Sequence[SampledCurve],
                transforms: Optional[Sequence[Optional[AffineMap2]]] = None, **kwargs) -> str:
        self.log(f"Rendering {len(curves)} curve(s)")
        document = render_svg(curves, transforms)
        self.send(MessageType.DATA, {"paths": len(curves), "bytes": len(document)}, receiver="Coordinator")
        return document

import xml.etree.ElementTree as ET

import numpy as np
import pytest

from agents.plot_generator import DASH_PATTERNS, SVG_NS, PlotGeneratorAgent, render_svg
from communication.message import MessageType
from geometry.generators import reference_family_curves
from models.affine import AffineMap2
from models.errors import EmptyInput, InvalidSpec


def parse(document: str) -> ET.Element:
    return ET.fromstring(document.encode("utf-8"))


def paths(root: ET.Element):
    return list(root.iter(f"{{{SVG_NS}}}path"))


def test_unit_circle_view_box(circle):
    root = parse(render_svg([circle(1.0, 401)]))
    assert root.get("viewBox") == "-1.1 -1.1 2.2 2.2"
    assert root.get("width") == "800" and root.get("height") == "800"
    assert len(paths(root)) == 1


def test_reference_families_use_their_line_styles():
    root = parse(render_svg(reference_family_curves()))
    drawn = paths(root)
    assert len(drawn) == 4
    dashes = [p.get("stroke-dasharray") for p in drawn]
    assert dashes[0] is None
    assert len(set(dashes)) == 4
    titles = [p.find(f"{{{SVG_NS}}}title").text for p in drawn]
    assert titles == list(DASH_PATTERNS)


def test_rendering_is_deterministic():
    curves = reference_family_curves(deform=True)
    assert render_svg(curves) == render_svg(curves)


def test_transforms_move_the_view_box(circle):
    scale = AffineMap2(2 * np.eye(2), np.zeros(2))
    root = parse(render_svg([circle(1.0, 401)], [scale]))
    assert root.get("viewBox") == "-2.2 -2.2 4.4 4.4"


def test_nothing_to_plot():
    with pytest.raises(EmptyInput):
        render_svg([])


def test_one_transform_per_curve(circle):
    with pytest.raises(InvalidSpec):
        render_svg([circle(), circle()], [None])


def test_agent_reports_the_path_count(quiet_bus, circle):
    agent = PlotGeneratorAgent(quiet_bus)
    document = agent.safe_execute(curves=[circle()])
    assert document.startswith('<?xml version="1.0" encoding="UTF-8"?>')
    sent = quiet_bus.get_history(sender="PlotGenerator", msg_type=MessageType.DATA)
    assert sent[-1].content["paths"] == 1

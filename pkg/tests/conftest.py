"""
Shared fixtures for the aesthetica test suite.
"""
import math
import sys
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

import config as config_module  # noqa: E402
from agents.base_agent import BaseAgent  # noqa: E402
from communication.message_bus import MessageBus  # noqa: E402
from models.curve import ParamKind, SampledCurve  # noqa: E402


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Fresh configuration per test with session logs under tmp_path."""
    monkeypatch.setenv(config_module.LOG_DIR_ENV, str(tmp_path / "logs"))
    monkeypatch.delenv(config_module.TOL_OVERRIDE_ENV, raising=False)
    config_module.reload_config()
    yield
    BaseAgent.close_file_logging()


@pytest.fixture
def quiet_bus():
    return MessageBus(verbose=False)


def make_circle(radius: float = 1.0, n: int = 400) -> SampledCurve:
    """Closed circle sampled counterclockwise, first and last samples equal."""
    t = np.linspace(0.0, 2.0 * math.pi, n)
    return SampledCurve.from_xy(t, radius * np.cos(t), radius * np.sin(t))


def make_graph(fn, lo: float, hi: float, n: int = 401, kind: ParamKind = ParamKind.ARBITRARY) -> SampledCurve:
    """Graph (t, fn(t)) on a uniform grid."""
    t = np.linspace(lo, hi, n)
    return SampledCurve.from_xy(t, t, fn(t), kind=kind)


@pytest.fixture
def circle():
    return make_circle


@pytest.fixture
def graph():
    return make_graph

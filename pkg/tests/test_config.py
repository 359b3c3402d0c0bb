import logging

import pytest

import config
from config import LOG_DIR_ENV, TOL_OVERRIDE_ENV, ToleranceConfig, get_numerics, get_tolerances, reload_config


def test_defaults():
    tolerances = get_tolerances()
    assert tolerances == ToleranceConfig()
    assert tolerances.esa_residual == 1e-6
    assert get_numerics().stencil_trim == 4
    assert get_numerics().curvature_spline_intervals == 64
    assert tolerances.alpha_boundary == 1e-3


def test_override_is_applied(monkeypatch):
    monkeypatch.setenv(TOL_OVERRIDE_ENV, '{"esa_residual": 1e-4, "poor_fit_rmse": 0.1}')
    reload_config()
    assert get_tolerances().esa_residual == 1e-4
    assert get_tolerances().poor_fit_rmse == 0.1
    assert get_tolerances().msa_sampled == ToleranceConfig().msa_sampled


@pytest.mark.parametrize("raw", [
    "{not json",
    "[1, 2]",
    '{"esa_residual": -1}',
    '{"esa_residal": 1e-4}',
])
def test_invalid_override_falls_back_to_defaults(monkeypatch, caplog, raw):
    monkeypatch.setenv(TOL_OVERRIDE_ENV, raw)
    with caplog.at_level(logging.WARNING):
        reload_config()
    assert get_tolerances() == ToleranceConfig()
    assert TOL_OVERRIDE_ENV in caplog.text


def test_log_dir_from_environment(monkeypatch, tmp_path):
    monkeypatch.setenv(LOG_DIR_ENV, str(tmp_path / "elsewhere"))
    assert reload_config().log_dir == str(tmp_path / "elsewhere")


def test_report_view_lists_every_tolerance():
    view = config.config.to_dict()
    assert set(view) == {"tolerances", "numerics"}
    assert view["tolerances"]["condition_limit"] == 1e12
    assert view["numerics"]["min_samples"] == 9

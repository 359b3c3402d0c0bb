import math

import numpy as np
import pytest
from pydantic import ValidationError

from models.affine import AffineMap2
from models.classes import ClassLabel, CurveClass, ESACoefficients
from models.curve import CurvatureProfile, Geometry, ParamKind, PlanarPoint, SampledCurve
from models.errors import CurveGeometryError, InvalidCurve, InvalidSpec, SingularRange, TooFewSamples
from models.family import (
    LAC,
    EsaClass,
    FamilySpec,
    LogSpiral,
    Quadratic,
    Sign,
    family_from_dict,
    family_to_dict,
)
from models.laws import BasisPair, EsaRegime, EulerLaw
from models.run_config import Command, RunConfig


class TestSampledCurve:
    def test_needs_nine_samples(self):
        t = np.linspace(0.0, 1.0, 8)
        with pytest.raises(TooFewSamples):
            SampledCurve.from_xy(t, t, t)

    def test_params_must_increase(self):
        t = np.linspace(0.0, 1.0, 10)
        t[5] = t[4]
        with pytest.raises(InvalidCurve):
            SampledCurve.from_xy(t, t, t)

    def test_rejects_non_finite_points(self):
        t = np.linspace(0.0, 1.0, 10)
        y = t.copy()
        y[3] = np.nan
        with pytest.raises(InvalidCurve):
            SampledCurve.from_xy(t, t, y)

    def test_rejects_length_mismatch(self):
        with pytest.raises(InvalidCurve):
            SampledCurve(np.linspace(0.0, 1.0, 10), np.zeros((11, 2)))

    def test_arrays_are_read_only(self):
        t = np.linspace(0.0, 1.0, 10)
        curve = SampledCurve.from_xy(t, t, t)
        with pytest.raises(ValueError):
            curve.points[0, 0] = 5.0

    def test_reversed_keeps_span_and_flips_points(self):
        t = np.linspace(1.0, 2.0, 10)
        curve = SampledCurve.from_xy(t, t, t ** 2)
        back = curve.reversed()
        np.testing.assert_allclose(back.params, t)
        np.testing.assert_allclose(back.points[0], curve.points[-1])

    def test_step_uniform_and_closed(self, circle):
        curve = circle(1.0, 64)
        assert curve.is_uniform()
        assert curve.is_closed()
        assert curve.step == pytest.approx(2 * math.pi / 63)

    def test_transformed_applies_linear_then_translation(self):
        t = np.linspace(0.0, 1.0, 10)
        curve = SampledCurve.from_xy(t, t, np.zeros(10))
        moved = curve.transformed(np.array([[0.0, -1.0], [1.0, 0.0]]), np.array([1.0, 2.0]))
        np.testing.assert_allclose(moved.points[-1], [1.0, 3.0])


def test_planar_point_must_be_finite():
    with pytest.raises(InvalidCurve):
        PlanarPoint(float("inf"), 0.0)


def test_profile_interior_keeps_the_middle():
    params = np.linspace(0.0, 10.0, 101)
    profile = CurvatureProfile(params, params, Geometry.EQUIAFFINE, ParamKind.EQUIAFFINE)
    inner = profile.interior(0.8)
    assert inner.params[0] == pytest.approx(1.0)
    assert inner.params[-1] == pytest.approx(9.0)


class TestAffineMap:
    def test_rejects_singular_linear_part(self):
        with pytest.raises(InvalidSpec):
            AffineMap2(np.array([[1.0, 2.0], [2.0, 4.0]]), np.zeros(2))

    def test_compose_matches_sequential_application(self):
        first = AffineMap2.from_flat([1.0, 0.5, 0.0, 1.0, 2.0, 0.0])
        second = AffineMap2.from_flat([0.0, -1.0, 1.0, 0.0, 0.0, 1.0])
        points = np.array([[0.0, 0.0], [1.0, 2.0], [-3.0, 0.5]])
        np.testing.assert_allclose(second.compose(first).apply(points), second.apply(first.apply(points)))

    def test_rows_round_trip(self):
        rows = [[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]]
        assert AffineMap2.from_rows(rows).to_rows() == rows

    def test_from_flat_needs_six_numbers(self):
        with pytest.raises(InvalidSpec):
            AffineMap2.from_flat([1.0, 0.0, 0.0, 1.0])


class TestFamilies:
    def test_dict_round_trip_keeps_enum_values(self):
        family = EsaClass(Sign.MINUS, 0.5, 1.0)
        data = family_to_dict(family)
        assert data == {"family": "esa", "sign": "minus", "xi": 0.5, "eta": 1.0}
        assert family_from_dict(data) == family

    def test_unknown_family(self):
        with pytest.raises(InvalidSpec):
            family_from_dict({"family": "cycloid"})

    def test_bad_parameters(self):
        with pytest.raises(InvalidSpec):
            family_from_dict({"family": "lac", "alpha": 1.0})

    @pytest.mark.parametrize("build", [
        lambda: LogSpiral(0.0, 0.0),
        lambda: EsaClass(Sign.PLUS, 0.0),
        lambda: EsaClass(Sign.ZERO, 1.0),
        lambda: Quadratic(1.0, aspect=0.0),
        lambda: LAC(float("nan"), 1.0, 1.0),
        lambda: FamilySpec(LogSpiral(1.0, 1.0), (1.0, 1.0), 100),
        lambda: FamilySpec(LogSpiral(1.0, 1.0), (0.0, 1.0), 5),
    ])
    def test_invalid_specs(self, build):
        with pytest.raises(InvalidSpec):
            build()

    def test_spec_to_dict(self):
        spec = FamilySpec(LogSpiral(1.0, 2.0), (0, 3), 50)
        assert spec.to_dict() == {"family": "logspiral", "a": 1.0, "b": 2.0, "range": [0.0, 3.0], "n": 50}


class TestEulerLaw:
    def test_regimes(self):
        assert EulerLaw(Sign.PLUS, 1.0).regime == EsaRegime.COMPLEX
        assert EulerLaw(Sign.PLUS, 2.0).regime == EsaRegime.DOUBLE
        assert EulerLaw(Sign.PLUS, 3.0).regime == EsaRegime.REAL
        assert EulerLaw(Sign.MINUS, 1.0).regime == EsaRegime.REAL

    def test_omega(self):
        assert EulerLaw(Sign.PLUS, 1.0).omega == pytest.approx(math.sqrt(3) / 2)
        assert EulerLaw(Sign.MINUS, 1 / math.sqrt(2)).omega == pytest.approx(1.5)
        assert EulerLaw(Sign.PLUS, 2.0).omega == 0.0

    def test_evaluates_law(self):
        law = EulerLaw(Sign.MINUS, 2.0)
        np.testing.assert_allclose(law(np.array([0.5, 1.0])), [-1.0, -0.25])


def test_canonical_basis_has_unit_initial_conditions():
    u = np.linspace(1.0, 2.0, 11)
    basis = BasisPair(u, 2 * np.cosh(u), np.sinh(u) / 2, 2 * np.sinh(u), np.cosh(u) / 2)
    canonical = basis.canonical()
    assert (canonical.f[0], canonical.f_u[0], canonical.g[0], canonical.g_u[0]) == pytest.approx((1, 0, 0, 1))
    np.testing.assert_allclose(canonical.wronskian, 1.0)


class TestClassLabel:
    def test_names(self):
        coefficients = ESACoefficients(Sign.PLUS, 3.0, 0.0, 0.0)
        label = ClassLabel(CurveClass.POWER_GRAPH, coefficients, omega=0.37, alpha=0.5)
        assert label.name == "PowerGraph(alpha=0.5)"
        assert ClassLabel(CurveClass.LOG_SPIRAL, coefficients).name == "LogSpiral"

    def test_power_graph_excludes_the_hyperbola(self):
        with pytest.raises(ValueError):
            ClassLabel(CurveClass.POWER_GRAPH, ESACoefficients(Sign.MINUS, 1.0, 0.0, 0.0), alpha=-1.0)


class TestRunConfig:
    def test_generate_needs_family(self, tmp_path):
        with pytest.raises(ValidationError):
            RunConfig(command=Command.GENERATE, output_path=tmp_path / "c.csv")

    def test_analysis_needs_input(self, tmp_path):
        with pytest.raises(ValidationError):
            RunConfig(command=Command.CLASSIFY, output_path=tmp_path / "r.json")

    def test_reference_plot_needs_no_input(self, tmp_path):
        config = RunConfig(command=Command.PLOT, output_path=tmp_path / "f.svg", options={"reference": True})
        assert config.option("reference") is True
        assert config.option("deform", False) is False

    def test_cli_names(self):
        assert Command.from_cli("check-esa") == Command.CHECK_ESA
        assert Command.from_cli("lcg") == Command.LCG


def test_errors_serialize_with_their_code():
    error = SingularRange("bad range", {"lo": -1.0})
    assert isinstance(error, CurveGeometryError)
    assert error.to_dict() == {"error": "SingularRange", "message": "bad range", "details": {"lo": -1.0}}

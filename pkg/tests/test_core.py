import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geometry.core import (
    equiaffine_curvature,
    euclidean_curvature,
    reparametrize,
    resample_uniform,
    similarity_curvature,
    turning_angle,
)
from geometry.generators import generate
from geometry.numerics import derivatives, cross, first_derivative, interior
from models.curve import CurvatureRoute, Geometry, ParamKind, ReparamOptions, SampledCurve
from models.errors import (
    DegenerateIntegrand,
    DegenerateSpeed,
    InvalidSpec,
    SignChange,
    TooFewSamples,
    VanishingCurvature,
)
from models.family import EsaClass, FamilySpec, LogSpiral, Quadratic, Sign


def spiral(n: int = 401) -> SampledCurve:
    return generate(FamilySpec(LogSpiral(1.0, 1.0), (-1.0, 1.0), n))


def segment(n: int = 101) -> SampledCurve:
    t = np.linspace(0.0, 1.0, n)
    return SampledCurve.from_xy(t, t, np.zeros(n))


class TestReparametrize:
    def test_unit_circle_has_arc_length_two_pi(self, circle):
        curve = reparametrize(circle(1.0, 400), ParamKind.ARC_LENGTH)
        assert curve.kind == ParamKind.ARC_LENGTH
        assert curve.params[0] == 0.0
        assert abs(curve.params[-1] - 2 * math.pi) < 1e-6

    def test_arc_length_has_unit_speed(self):
        t = np.linspace(0.0, 3.0, 1000)
        ellipse = SampledCurve.from_xy(t, 2 * np.cos(t), np.sin(t))
        curve = reparametrize(ellipse, ParamKind.ARC_LENGTH)
        speed = np.linalg.norm(first_derivative(curve.points, curve.step), axis=1)
        assert np.max(np.abs(interior(speed, 4) - 1.0)) < 1e-6

    def test_parabola_equiaffine_length(self, graph):
        curve = reparametrize(graph(np.square, -1.0, 1.0), ParamKind.EQUIAFFINE)
        assert curve.kind == ParamKind.EQUIAFFINE
        assert curve.span == pytest.approx(2 * 2 ** (1 / 3), abs=1e-6)
        assert curve.meta["orientation_flipped"] is False

    def test_equiaffine_parameter_has_unit_determinant(self):
        t = np.linspace(0.0, 3.0, 1000)
        ellipse = SampledCurve.from_xy(t, 2 * np.cos(t), np.sin(t))
        curve = reparametrize(ellipse, ParamKind.EQUIAFFINE)
        d1, d2, _ = derivatives(curve.points, curve.step)
        assert np.max(np.abs(interior(cross(d1, d2), 4) - 1.0)) < 1e-4

    def test_base_offsets_the_parameter(self, graph):
        curve = reparametrize(graph(np.square, -1.0, 1.0), ParamKind.EQUIAFFINE, ReparamOptions(base=1.5))
        assert curve.params[0] == 1.5

    def test_clockwise_curve_is_reversed(self, graph):
        curve = reparametrize(graph(lambda t: -t ** 2, -1.0, 1.0), ParamKind.EQUIAFFINE)
        assert curve.meta["orientation_flipped"] is True
        np.testing.assert_allclose(curve.points[0], [1.0, -1.0], atol=1e-12)

    def test_output_sample_count(self, circle):
        assert len(reparametrize(circle(1.0, 200), ParamKind.ARC_LENGTH, ReparamOptions(samples=50))) == 50

    def test_segment_has_no_equiaffine_length(self):
        with pytest.raises(DegenerateIntegrand):
            reparametrize(segment(), ParamKind.EQUIAFFINE)

    def test_inflection_is_a_sign_change(self, graph):
        with pytest.raises(SignChange):
            reparametrize(graph(lambda t: t ** 3, -1.0, 1.0, 400), ParamKind.EQUIAFFINE)

    def test_cannot_target_arbitrary(self, circle):
        with pytest.raises(InvalidSpec):
            reparametrize(circle(), ParamKind.ARBITRARY)

    def test_too_few_output_samples(self, circle):
        with pytest.raises(TooFewSamples):
            reparametrize(circle(), ParamKind.ARC_LENGTH, ReparamOptions(samples=5))

    def test_spiral_turning_angle_is_its_own_parameter(self):
        curve = reparametrize(spiral(), ParamKind.TURNING_ANGLE)
        assert curve.span == pytest.approx(2.0, abs=1e-8)


class TestResample:
    def test_closed_circle_stays_round(self, circle):
        curve = resample_uniform(circle(1.0, 64), 256)
        assert len(curve) == 256
        assert np.max(np.abs(np.linalg.norm(curve.points, axis=1) - 1.0)) < 1e-6

    def test_same_grid_reproduces_points(self, circle):
        source = circle(1.0, 100)
        np.testing.assert_allclose(resample_uniform(source, 100).points, source.points, atol=1e-12)

    def test_too_few_samples(self, circle):
        with pytest.raises(TooFewSamples):
            resample_uniform(circle(1.0, 64), 5)


class TestEuclidean:
    def test_circle_of_radius_two(self, circle):
        profile = euclidean_curvature(circle(2.0, 400))
        assert profile.geometry == Geometry.EUCLIDEAN
        assert len(profile) == 400 - 8
        np.testing.assert_allclose(profile.kappa, 0.5, atol=1e-6)

    def test_spiral_curvature(self):
        profile = euclidean_curvature(spiral())
        assert profile.at(0.0) == pytest.approx(1 / math.sqrt(2), rel=1e-6)
        np.testing.assert_allclose(profile.kappa, np.exp(-profile.params) / math.sqrt(2), rtol=1e-6)

    def test_segment_is_straight(self):
        np.testing.assert_allclose(euclidean_curvature(segment()).kappa, 0.0, atol=1e-8)

    def test_clockwise_circle_is_negative(self, circle):
        profile = euclidean_curvature(circle(1.0, 400).reversed())
        np.testing.assert_allclose(profile.kappa, -1.0, atol=1e-6)

    def test_stalled_curve_has_no_curvature(self):
        t = np.linspace(0.0, 1.0, 20)
        with pytest.raises(DegenerateSpeed):
            euclidean_curvature(SampledCurve.from_xy(t, np.ones(20), np.ones(20)))

    def test_turning_angle_of_circle(self, circle):
        theta = turning_angle(circle(1.0, 400))
        assert theta[-1] == pytest.approx(2 * math.pi, abs=1e-6)


class TestSimilarity:
    def test_circle_is_zero(self, circle):
        profile = similarity_curvature(circle(1.0, 400))
        np.testing.assert_allclose(profile.kappa, 0.0, atol=1e-6)

    def test_spiral_is_minus_one(self):
        profile = similarity_curvature(spiral())
        assert profile.geometry == Geometry.SIMILARITY
        np.testing.assert_allclose(profile.kappa, -1.0, atol=1e-5)

    def test_segment_is_singular(self):
        with pytest.raises(VanishingCurvature):
            similarity_curvature(segment())


class TestEquiaffine:
    def test_parabola_is_zero_on_both_routes(self, graph):
        parabola = graph(np.square, -1.0, 1.0)
        direct = equiaffine_curvature(parabola, CurvatureRoute.EQUIAFFINE)
        via_euclid = equiaffine_curvature(parabola, CurvatureRoute.EUCLIDEAN)
        np.testing.assert_allclose(direct.kappa, 0.0, atol=1e-6)
        np.testing.assert_allclose(via_euclid.kappa, 0.0, atol=1e-4)

    def test_circle_of_radius_two(self, circle):
        profile = equiaffine_curvature(circle(2.0, 1000))
        np.testing.assert_allclose(profile.kappa, 2 ** (-4 / 3), rtol=1e-4)

    def test_hyperbola_branch(self):
        t = np.linspace(0.5, 2.0, 1000)
        hyperbola = SampledCurve.from_xy(t, t, 1 / t)
        profile = equiaffine_curvature(hyperbola)
        np.testing.assert_allclose(profile.kappa, -2 ** (-2 / 3), rtol=1e-4)

    def test_routes_agree_on_an_ellipse(self):
        ellipse = generate(FamilySpec(Quadratic(1.0, 1.5), (0.0, 3.0), 1000))
        direct = equiaffine_curvature(ellipse, CurvatureRoute.EQUIAFFINE)
        via_euclid = equiaffine_curvature(ellipse, CurvatureRoute.EUCLIDEAN)
        np.testing.assert_allclose(direct.kappa, 1.0, rtol=1e-3)
        np.testing.assert_allclose(via_euclid.kappa, 1.0, rtol=1e-3)

    @pytest.mark.parametrize("kappa_sa, lo, hi", [(1.0, 0.0, 3.0), (-1.0, -1.5, 1.5), (2.5, 0.0, 1.5)])
    def test_conics_have_constant_curvature(self, kappa_sa, lo, hi):
        curve = generate(FamilySpec(Quadratic(kappa_sa), (lo, hi), 1000))
        kappa = equiaffine_curvature(curve).kappa
        assert np.std(kappa) / abs(np.mean(kappa)) < 1e-4
        assert np.mean(kappa) == pytest.approx(kappa_sa, rel=1e-4)

    def test_generated_parabola_is_flat(self):
        curve = generate(FamilySpec(Quadratic(0.0), (-1.0, 1.0), 1000))
        assert np.max(np.abs(equiaffine_curvature(curve).kappa)) < 1e-6

    def test_parabola_graph_is_flat(self):
        t = np.linspace(-1.0, 1.0, 1000)
        parabola = SampledCurve.from_xy(t, t, t ** 2)
        assert np.max(np.abs(equiaffine_curvature(parabola).kappa)) < 1e-6

    @pytest.mark.parametrize("n", [200, 1000, pytest.param(4000, marks=pytest.mark.slow)])
    def test_hyperbola_graph_is_constant_at_any_resolution(self, n):
        t = np.linspace(0.5, 2.0, n)
        kappa = equiaffine_curvature(SampledCurve.from_xy(t, t, 1 / t)).kappa
        np.testing.assert_allclose(kappa, -2 ** (-2 / 3), rtol=1e-4)
        assert np.std(kappa) / abs(np.mean(kappa)) < 1e-4

    @pytest.mark.parametrize("n", [200, 1000, pytest.param(4000, marks=pytest.mark.slow)])
    def test_euclidean_route_on_fine_grids(self, n):
        t = np.linspace(0.5, 2.0, n)
        hyperbola = SampledCurve.from_xy(t, t, 1 / t)
        profile = equiaffine_curvature(hyperbola, CurvatureRoute.EUCLIDEAN)
        np.testing.assert_allclose(profile.kappa, -2 ** (-2 / 3), rtol=1e-3)

    def test_routes_agree_on_an_esa_curve(self):
        curve = generate(FamilySpec(EsaClass(Sign.PLUS, 1.0), (1.0, 3.0), 1000))
        direct = equiaffine_curvature(curve, CurvatureRoute.EQUIAFFINE)
        via_euclid = equiaffine_curvature(curve, CurvatureRoute.EUCLIDEAN)
        np.testing.assert_array_equal(direct.params, via_euclid.params)
        np.testing.assert_allclose(via_euclid.kappa, direct.kappa, atol=1e-3)


@st.composite
def unimodular_maps(draw):
    a = draw(st.floats(0.5, 2.0))
    b = draw(st.floats(-1.0, 1.0))
    c = draw(st.floats(-1.0, 1.0))
    linear = np.array([[a, b], [c, (1.0 + b * c) / a]])
    translation = np.array([draw(st.floats(-5.0, 5.0)), draw(st.floats(-5.0, 5.0))])
    return linear, translation


ELLIPSE = generate(FamilySpec(Quadratic(1.0, 1.3), (0.0, 3.0), 600))
ELLIPSE_KAPPA = equiaffine_curvature(ELLIPSE).kappa
SPIRAL = spiral()
SPIRAL_KAPPA = euclidean_curvature(SPIRAL).kappa


@settings(max_examples=25, deadline=None)
@given(unimodular_maps())
def test_equiaffine_curvature_is_invariant_under_unimodular_maps(affine):
    linear, translation = affine
    moved = ELLIPSE.transformed(linear, translation)
    np.testing.assert_allclose(equiaffine_curvature(moved).kappa, ELLIPSE_KAPPA, atol=1e-4)


@settings(max_examples=25, deadline=None)
@given(st.floats(-math.pi, math.pi), st.floats(-5.0, 5.0), st.floats(-5.0, 5.0))
def test_euclidean_curvature_is_invariant_under_motions(angle, dx, dy):
    rotation = np.array([[math.cos(angle), -math.sin(angle)], [math.sin(angle), math.cos(angle)]])
    moved = SPIRAL.transformed(rotation, np.array([dx, dy]))
    np.testing.assert_allclose(euclidean_curvature(moved).kappa, SPIRAL_KAPPA, atol=1e-6)

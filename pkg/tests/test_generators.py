import math

import numpy as np
import pytest

from geometry.affinity import esa_parameter_transform, fit_affine_shift
from geometry.core import equiaffine_curvature, euclidean_curvature
from geometry.generators import (
    esa_class_maps,
    family_label,
    generate,
    msa_parametrization,
    reference_family_curves,
)
from geometry.numerics import cross, derivatives, interior
from models.affine import AffineMap2
from models.curve import ParamKind
from models.errors import InvalidSpec, NonMonotoneKappa, SingularRange
from models.family import (
    LAC,
    EsaClass,
    FamilySpec,
    LogGraph,
    LogSpiral,
    PowerGraph,
    Quadratic,
    Sign,
    XLogXGraph,
)


def test_spiral_starts_at_one():
    curve = generate(FamilySpec(LogSpiral(1.0, 1.0), (0.0, 1.0), 50))
    np.testing.assert_allclose(curve.points[0], [1.0, 0.0])
    assert curve.kind == ParamKind.ARBITRARY
    assert family_label(curve) == "logspiral"


def test_meta_records_the_spec():
    spec = FamilySpec(EsaClass(Sign.PLUS, 1.0), (0.5, 4.0), 1000)
    curve = generate(spec)
    assert curve.kind == ParamKind.EQUIAFFINE
    assert curve.meta["family"] == "esa"
    assert curve.meta["spec"] == spec.to_dict()
    assert curve.meta["regime"] == "complex"
    assert curve.meta["omega"] == pytest.approx(math.sqrt(3) / 2)


@pytest.mark.parametrize("sign, xi", [(Sign.PLUS, 1.0), (Sign.PLUS, 2.0), (Sign.PLUS, 3.0), (Sign.MINUS, 1.0)])
def test_esa_curves_are_in_equiaffine_arc_length(sign, xi):
    curve = generate(FamilySpec(EsaClass(sign, xi), (0.5, 4.0), 1000))
    d1, d2, _ = derivatives(curve.points, curve.step)
    np.testing.assert_allclose(interior(cross(d1, d2), 4), 1.0, rtol=1e-6)


@pytest.mark.parametrize("sign, xi", [(Sign.PLUS, 1.0), (Sign.PLUS, 2.0), (Sign.PLUS, 3.0), (Sign.MINUS, 1.0)])
def test_esa_curves_follow_their_law(sign, xi):
    curve = generate(FamilySpec(EsaClass(sign, xi), (0.5, 4.0), 1000))
    profile = equiaffine_curvature(curve).interior(0.8)
    expected = sign.factor * (xi * profile.params) ** -2.0
    np.testing.assert_allclose(profile.kappa, expected, rtol=1e-3)


def test_esa_offset_moves_the_singular_point():
    shifted = generate(FamilySpec(EsaClass(Sign.PLUS, 1.0, eta=1.0), (-0.5, 3.0), 1000))
    profile = equiaffine_curvature(shifted).interior(0.8)
    np.testing.assert_allclose(profile.kappa, (profile.params + 1.0) ** -2.0, rtol=1e-3)


def test_lac_of_slope_one_has_reciprocal_curvature():
    curve = generate(FamilySpec(LAC(1.0, 1.0, math.sqrt(2)), (0.0, 3.0), 1000))
    assert curve.kind == ParamKind.ARC_LENGTH
    profile = euclidean_curvature(curve)
    np.testing.assert_allclose(profile.kappa, 1.0 / (profile.params + math.sqrt(2)), rtol=1e-6)


def test_lac_of_slope_two():
    curve = generate(FamilySpec(LAC(2.0, 1.0, 1.0), (0.0, 3.0), 1000))
    profile = euclidean_curvature(curve)
    np.testing.assert_allclose(profile.kappa, (profile.params + 1.0) ** -0.5, rtol=1e-5)


def test_clothoid_is_the_slope_minus_one_lac():
    curve = generate(FamilySpec(LAC(-1.0, 1.0, 1.0), (0.0, 2.0), 1000))
    profile = euclidean_curvature(curve)
    np.testing.assert_allclose(profile.kappa, profile.params + 1.0, atol=1e-6)


def test_conic_labels():
    assert generate(FamilySpec(Quadratic(1.0), (0.0, 1.0), 20)).meta["conic"] == "ellipse"
    assert generate(FamilySpec(Quadratic(-1.0), (0.0, 1.0), 20)).meta["conic"] == "hyperbola"
    assert generate(FamilySpec(Quadratic(0.0), (0.0, 1.0), 20)).meta["conic"] == "parabola"


@pytest.mark.parametrize("family, lo, hi, expected", [
    (PowerGraph(2.0), 0.0, 2.0, lambda t: t ** 2),
    (LogGraph(), 1.0, 2.0, np.log),
    (XLogXGraph(), 0.5, 2.0, lambda t: t * np.log(t)),
])
def test_graphs(family, lo, hi, expected):
    curve = generate(FamilySpec(family, (lo, hi), 30))
    np.testing.assert_allclose(curve.x, curve.params)
    np.testing.assert_allclose(curve.y, expected(curve.params))


@pytest.mark.parametrize("spec", [
    FamilySpec(EsaClass(Sign.PLUS, 1.0), (-1.0, 1.0), 100),
    FamilySpec(EsaClass(Sign.MINUS, 2.0, eta=-2.0), (0.5, 2.0), 100),
    FamilySpec(LAC(1.0, 1.0, 0.5), (-1.0, 1.0), 100),
    FamilySpec(LogGraph(), (-1.0, 1.0), 100),
    FamilySpec(XLogXGraph(), (0.0, 1.0), 100),
    FamilySpec(PowerGraph(0.5), (-1.0, 1.0), 100),
])
def test_singular_ranges(spec):
    with pytest.raises(SingularRange):
        generate(spec)


def test_integer_powers_accept_negative_abscissae():
    curve = generate(FamilySpec(PowerGraph(3.0), (-1.0, 1.0), 21))
    assert curve.y[0] == pytest.approx(-1.0)


def test_analytic_shift_maps_match_the_fitted_ones():
    curve = generate(FamilySpec(EsaClass(Sign.PLUS, 3.0), (0.5, 4.0), 1000))
    in_t = esa_parameter_transform(curve, 1.0)
    eps = 50 * in_t.step
    fit = fit_affine_shift(in_t, eps)
    expected = esa_class_maps(Sign.PLUS, 3.0, 1.0, eps)
    np.testing.assert_allclose(fit.affine_map.linear, expected.linear, atol=1e-6)
    np.testing.assert_allclose(fit.affine_map.translation, expected.translation, atol=1e-5)


@pytest.mark.parametrize("sign, xi", [(Sign.PLUS, 1.0), (Sign.PLUS, 2.0), (Sign.MINUS, 1 / math.sqrt(2))])
def test_analytic_shift_maps_are_exact(sign, xi):
    curve = generate(FamilySpec(EsaClass(sign, xi), (0.5, 4.0), 1000))
    in_t = esa_parameter_transform(curve, 1.0)
    steps = 80
    eps = steps * in_t.step
    affine = esa_class_maps(sign, xi, 1.0, eps)
    mapped = affine.apply(in_t.points[:-steps])
    scale = in_t.bbox_diagonal()
    assert np.max(np.linalg.norm(mapped - in_t.points[steps:], axis=1)) / scale < 1e-8


class TestMsaParametrization:
    def test_slope_one_curvature_is_exponential(self):
        curve = msa_parametrization(FamilySpec(LAC(1.0, 1.0, math.sqrt(2)), (0.0, 3.0), 1000))
        law = curve.meta["msa"]
        assert curve.kind == ParamKind.ESA_PARAM
        assert law["kappa_ref"] == pytest.approx(1 / math.sqrt(2))
        profile = euclidean_curvature(curve)
        np.testing.assert_allclose(np.abs(profile.kappa), law["kappa_ref"] * np.exp(profile.params), rtol=1e-5)

    def test_same_point_set_as_arc_length_sampling(self):
        spec = FamilySpec(LAC(2.0, 1.0, 1.0), (0.0, 3.0), 1000)
        by_arc_length = generate(spec)
        by_msa = msa_parametrization(spec)
        assert by_msa.kind == ParamKind.ARBITRARY
        np.testing.assert_allclose(by_msa.points[-1], by_arc_length.points[0], atol=1e-9)
        np.testing.assert_allclose(by_msa.points[0], by_arc_length.points[-1], atol=1e-6)

    def test_constant_curvature_has_no_msa_parameter(self):
        with pytest.raises(NonMonotoneKappa):
            msa_parametrization(FamilySpec(LAC(1.0, 0.0, 1.0), (0.0, 1.0), 100))

    def test_needs_a_lac(self):
        with pytest.raises(InvalidSpec):
            msa_parametrization(FamilySpec(LogSpiral(1.0, 1.0), (0.0, 1.0), 100))


class TestReferenceFamilies:
    def test_four_curves_anchored_at_the_origin(self):
        curves = reference_family_curves()
        assert [c.meta["family"] for c in curves] == ["power", "logspiral", "log", "xlogx"]
        for curve in curves:
            np.testing.assert_array_equal(curve.points[0], [0.0, 0.0])
            assert curve.meta["deformed"] is False

    def test_deformed_curves_stay_anchored(self):
        curves = reference_family_curves(deform=True)
        assert all(c.meta["deformed"] for c in curves)
        for plain, deformed in zip(reference_family_curves(), curves):
            np.testing.assert_allclose(deformed.points[0], [0.0, 0.0], atol=1e-15)
            assert not np.allclose(plain.points, deformed.points)

    def test_needs_one_deformation_per_curve(self):
        with pytest.raises(InvalidSpec):
            reference_family_curves(deform=True, deformations=[AffineMap2.identity()])

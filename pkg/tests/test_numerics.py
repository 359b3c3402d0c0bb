import math

import numpy as np
import pytest

from geometry import numerics


@pytest.fixture
def sine_grid():
    x = np.linspace(0.0, 2.0 * math.pi, 201)
    return x, x[1] - x[0]


def test_first_derivative_is_accurate_up_to_the_edges(sine_grid):
    x, h = sine_grid
    assert np.max(np.abs(numerics.first_derivative(np.sin(x), h) - np.cos(x))) < 1e-5


def test_second_derivative_is_accurate_up_to_the_edges(sine_grid):
    x, h = sine_grid
    assert np.max(np.abs(numerics.second_derivative(np.sin(x), h) + np.sin(x))) < 1e-4


def test_third_derivative_is_undefined_on_two_edge_samples(sine_grid):
    x, h = sine_grid
    d3 = numerics.third_derivative(np.sin(x), h)
    assert np.all(np.isnan(d3[:2])) and np.all(np.isnan(d3[-2:]))
    assert np.max(np.abs(d3[2:-2] + np.cos(x[2:-2]))) < 1e-3


def test_derivatives_are_exact_for_quadratics():
    x = np.linspace(-1.0, 1.0, 41)
    h = x[1] - x[0]
    d1, d2, d3 = numerics.derivatives(x ** 2, h)
    np.testing.assert_allclose(d1, 2 * x, atol=1e-10)
    np.testing.assert_allclose(d2, 2.0, atol=1e-8)
    np.testing.assert_allclose(d3[2:-2], 0.0, atol=1e-6)


def test_derivatives_work_column_wise():
    t = np.linspace(0.0, 1.0, 51)
    points = np.column_stack([t, t ** 2])
    d1 = numerics.first_derivative(points, t[1] - t[0])
    assert d1.shape == points.shape
    np.testing.assert_allclose(d1[:, 0], 1.0, atol=1e-10)


def test_spline_integral_starts_at_zero():
    x = np.linspace(0.0, math.pi, 101)
    integral = numerics.spline_cumulative_integral(x, np.cos(x), intervals=256)
    assert integral[0] == 0.0
    assert np.max(np.abs(integral - np.sin(x))) < 1e-8


def test_smoothing_spline_removes_odd_even_ripple():
    x = np.linspace(0.0, 1.0, 2001)
    values = 1.0 + 1e-9 * (-1.0) ** np.arange(len(x))
    spline = numerics.smoothing_spline(x, values, intervals=64)
    np.testing.assert_allclose(spline(x), 1.0, atol=2e-9)
    assert np.max(np.abs(spline.derivative(2)(x))) < 1e-4
    assert np.max(np.abs(numerics.second_derivative(values, x[1] - x[0]))) > 1e-2


def test_smoothing_spline_interpolates_short_series():
    x = np.linspace(0.0, 1.0, 20)
    spline = numerics.smoothing_spline(x, x ** 3, intervals=64)
    np.testing.assert_allclose(spline(x), x ** 3, atol=1e-12)


def test_cumulative_integral_on_nonuniform_params():
    x = np.linspace(0.0, 1.0, 101) ** 2
    integral = numerics.cumulative_integral_on(2 * x, x)
    np.testing.assert_allclose(integral, x ** 2, atol=1e-6)


def test_rk4_integrates_exponential_growth():
    grid = np.linspace(0.0, 1.0, 11)
    states = numerics.rk4(lambda t, y: y, np.array([1.0]), grid, 8)
    assert states.shape == (11, 1)
    assert abs(states[-1, 0] - math.e) < 1e-8


def test_sign_change_indices():
    np.testing.assert_array_equal(numerics.sign_change_indices([1.0, 2.0, -1.0, -3.0, 4.0]), [1, 3])


def test_shift_steps_accepts_only_grid_multiples():
    assert numerics.shift_steps(0.3, 0.1) == 3
    assert numerics.shift_steps(-0.2, 0.1) == -2
    assert numerics.shift_steps(0.25, 0.1) is None


def test_snap_to_grid_rounds_and_drops_duplicates():
    snapped = numerics.snap_to_grid([0.11, 0.29, 0.31], 0.1)
    np.testing.assert_allclose(snapped, [0.1, 0.3])


def test_cubic_resample_reproduces_knots():
    params = np.linspace(0.0, 1.0, 20)
    values = np.column_stack([params, np.exp(params)])
    np.testing.assert_allclose(numerics.cubic_resample(params, values, params), values, atol=1e-12)


def test_smooth_resample_is_exact_for_low_degree_polynomials():
    params = np.linspace(0.0, 2.0, 30)
    fine = np.linspace(0.0, 2.0, 77)
    values = params ** 3 - params
    np.testing.assert_allclose(numerics.smooth_resample(params, values, fine), fine ** 3 - fine, atol=1e-10)


def test_interior_trims_both_ends():
    np.testing.assert_array_equal(numerics.interior(np.arange(10), 4), [4, 5])
    np.testing.assert_array_equal(numerics.interior(np.arange(5), 0), np.arange(5))

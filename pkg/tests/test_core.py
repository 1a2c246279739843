import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from landau_osc.core import (
    FieldParams,
    InvalidParameterError,
    OracleFailure,
    cyclotron_frequency,
    generator,
    matrix_exp_series,
    printed_rotation_block,
    rotation,
)


@pytest.mark.parametrize(
    "q, B, expected",
    [(1.0, 1.0, 1.0), (2.0, 3.0, 6.0), (1.0, -1.0, -1.0)],
)
def test_cyclotron_frequency(q, B, expected):
    assert cyclotron_frequency(FieldParams(charge=q, field=B)) == expected


@pytest.mark.parametrize("kw", [{"mass": 0.0}, {"mass": -1.0}, {"light_speed": 0.0}, {"hbar": 0.0}])
def test_invalid_parameters(kw):
    with pytest.raises(InvalidParameterError):
        FieldParams(**kw)


def test_generator_structure():
    om = generator(1.7)
    assert np.array_equal(om.T, -om)
    om0 = om[:2, :2]
    assert np.allclose(om0.T @ om0, 1.7**2 * np.eye(2), atol=0, rtol=1e-15)
    assert np.array_equal(om @ np.array([0, 0, 1.0]), np.zeros(3))


def test_generator_is_cross_product():
    b = np.array([0.0, 0.0, 1.3])
    x = np.array([0.4, -2.0, 0.9])
    assert np.allclose(generator(1.3) @ x, np.cross(b, x))


def test_rotation_identity_at_zero():
    assert np.array_equal(rotation(0.0, 3.0), np.eye(3))


# frozen from matrix_exp_series(generator(1), t, 1e-14)
@pytest.mark.parametrize(
    "angle, block",
    [(math.pi / 2, [[0.0, -1.0], [1.0, 0.0]]), (math.pi, [[-1.0, 0.0], [0.0, -1.0]])],
)
def test_rotation_quarter_and_half_turn(angle, block):
    u = rotation(angle, 1.0)
    assert np.allclose(u[:2, :2], block, atol=1e-15)
    series = matrix_exp_series(generator(1.0), angle, 1e-14)
    assert np.allclose(series[:2, :2], block, atol=1e-13)


def test_half_turn_is_square_of_quarter_turn():
    q = rotation(math.pi / 2, 1.0)
    assert np.allclose(q @ q, rotation(math.pi, 1.0), atol=1e-15)


def test_series_zero_matrix():
    assert np.array_equal(matrix_exp_series(np.zeros((3, 3)), 5.0, 1e-14), np.eye(3))


def test_series_full_period():
    tol = 1e-14
    assert np.max(np.abs(matrix_exp_series(generator(1.0), 2 * math.pi, tol) - np.eye(3))) < 10 * tol * 100


def test_series_nonconvergence_raises():
    with pytest.raises(OracleFailure):
        matrix_exp_series(np.eye(3) * 50, 1.0, 1e-14, max_terms=20)
    with pytest.raises(InvalidParameterError):
        matrix_exp_series(np.eye(3), 1.0, 0.0)


def test_printed_block_is_not_orthogonal():
    b = printed_rotation_block(1.0)
    assert np.max(np.abs(b.T @ b - np.eye(2))) > 0.5


def test_rotation_matches_series_over_window():
    for wt in np.linspace(-4 * math.pi, 4 * math.pi, 33):
        diff = rotation(wt / 2.5, 2.5) - matrix_exp_series(generator(2.5), wt / 2.5, 1e-14)
        assert np.max(np.abs(diff)) < 1e-10


@settings(max_examples=100, deadline=None)
@given(t=st.floats(-10, 10), w=st.floats(-5, 5).filter(lambda v: abs(v) > 1e-3))
def test_rotation_orthogonal(t, w):
    u = rotation(t, w)
    assert np.max(np.abs(u.T @ u - np.eye(3))) < 1e-12
    assert abs(np.linalg.det(u) - 1) < 1e-12
    assert np.array_equal(u[2], [0, 0, 1]) and np.array_equal(u[:, 2], [0, 0, 1])
    assert np.array_equal(u.T, rotation(-t, w))


@settings(max_examples=100, deadline=None)
@given(a=st.floats(-10, 10), b=st.floats(-10, 10))
def test_rotation_group_property(a, b):
    assert np.max(np.abs(rotation(a, 1.3) @ rotation(b, 1.3) - rotation(a + b, 1.3))) < 1e-12

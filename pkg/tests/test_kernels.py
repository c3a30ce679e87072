import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kappashape.kernels import b_exact, b_kappa, b_kappa_row_sum, log_b_kappa, pi_kappa
from kappashape._validation import DomainError

# (x, y, kappa) -> value and natural log of |value|, from 2000-digit arithmetic
ORACLE = [
    ((0.3, 0.5, 1.0), 0.43070604524637648, -0.84232945115715051),
    ((0.5, 0.5, 0.01), 0.5, -0.69314718055994531),
    ((2.0, 0.5, 0.1), 9.3576229495518161e-14, -30.000000002061246),
    ((10.0, 0.5, 0.1), 3.0482349446890084e-83, -190.00000000206114),
    ((-3.0, -1.5, 0.7), -0.013574309513662245, -4.2995762790110507),
    ((0.001, 2.0, 1000.0), 0.0019999973333356, -6.2146094317552806),
]

finite = st.floats(-50, 50, allow_nan=False)
positive = st.floats(1e-3, 1e3)


def test_b_exact_case_table():
    assert b_exact(0.2, 0.5) == 1.0
    assert b_exact(0.2, -0.5) == -1.0
    assert b_exact(0.5, 0.5) == 0.5
    assert b_exact(-0.5, -0.5) == -0.5
    assert b_exact(0.7, 0.5) == 0.0
    assert b_exact(0.0, 0.0) == 0.0


def test_b_exact_is_kronecker_on_integers():
    n = np.arange(20)[:, None]
    j = np.arange(20)[None, :]
    assert np.array_equal(b_exact(n - j, 0.5), np.eye(20))


@pytest.mark.parametrize("args, value, log_value", ORACLE)
def test_b_kappa_matches_high_precision(args, value, log_value):
    assert b_kappa(*args) == pytest.approx(value, rel=1e-13)
    assert log_b_kappa(*args) == pytest.approx(log_value, rel=1e-14)


def test_log_form_survives_underflow():
    assert b_kappa(40.0, 0.5, 0.05) == 0.0
    assert log_b_kappa(40.0, 0.5, 0.05) == pytest.approx(-1580.0, rel=1e-14)
    assert log_b_kappa(1.0, 0.0, 1.0) == -math.inf


def test_limits():
    x = np.array([-2.0, -0.3, 0.2, 0.9])
    assert np.allclose(b_kappa(x, 0.5, 1e-4), b_exact(x, 0.5), atol=1e-12)
    assert np.allclose(b_kappa(x, 0.5, 1e6) * 1e6, 0.5, rtol=1e-9)


@given(finite, finite, positive)
def test_parity(x, y, k):
    v = b_kappa(x, y, k)
    assert b_kappa(-x, y, k) == v
    assert b_kappa(x, -y, k) == -v


@given(finite, st.floats(0, 50), positive)
def test_bounded_by_step_height(x, y, k):
    assert 0.0 <= b_kappa(x, y, k) <= 1.0


@settings(max_examples=200)
@given(st.floats(-20, 80), st.integers(1, 64), positive)
def test_row_sum_telescopes(t, n, k):
    direct = math.fsum(float(b_kappa(t - j, 0.5, k)) for j in range(n))
    closed = float(b_kappa_row_sum(t, n, k))
    assert abs(direct - closed) <= 1e-12 * max(1.0, closed)


@given(finite, st.floats(0.05, 3), positive, st.integers(1, 12), st.integers(-5, 5))
def test_pi_kappa_periodic(x, y, k, period, shift):
    a = pi_kappa(x, y, k, period)
    b = pi_kappa(x + shift * period, y, k, period)
    assert abs(a - b) <= 1e-12


def test_rejects_bad_kappa():
    for bad in (0.0, -1.0, math.nan, math.inf):
        with pytest.raises(DomainError):
            b_kappa(0.0, 0.5, bad)
    with pytest.raises(DomainError):
        pi_kappa(0.0, 0.5, 1.0, 0.0)


def test_broadcasting_and_scalars():
    out = b_kappa(np.zeros((3, 1)), np.ones(4), 1.0)
    assert out.shape == (3, 4)
    assert np.ndim(b_kappa(0.0, 1.0, 1.0)) == 0


def test_array_kappa_broadcasts():
    k = np.array([0.1, 1.0, 10.0])
    assert np.array_equal(b_kappa(0.3, 0.5, k), [b_kappa(0.3, 0.5, v) for v in k])
    with pytest.raises(DomainError):
        b_kappa(0.3, 0.5, np.array([1.0, -1.0]))


def test_scaling_moves_kappa_and_arguments_together():
    # b(x, y, a k) equals b(x / a, y / a, k), not b(a x, a y, k)
    assert b_kappa(0.3, 0.5, 2.0 * 0.1) == pytest.approx(b_kappa(0.15, 0.25, 0.1), abs=1e-15)
    assert abs(b_kappa(0.3, 0.5, 2.0 * 0.1) - b_kappa(0.6, 1.0, 0.1)) > 1e-2

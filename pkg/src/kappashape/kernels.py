"""Step and smoothed-step kernels.

``b_exact`` is the piecewise step kernel: it is ``sign(y)`` strictly inside
``|x| < |y|``, half that on the boundary and zero elsewhere, so
``b_exact(n - j, 1/2)`` is the Kronecker delta on integers.  ``b_kappa`` is
its smooth replacement

    b_kappa(x, y, k) = (tanh((x + y) / k) - tanh((x - y) / k)) / 2

which tends to ``b_exact`` as ``k -> 0`` and to ``y / k`` as ``k -> inf``.
``pi_kappa`` feeds both arguments through ``sin(pi * . / T)`` to obtain a
kernel of period ``T`` in ``x``.

All functions broadcast over numpy arrays and return numpy scalars for
scalar input.
"""

from __future__ import annotations

import numpy as np

from ._validation import check_int, check_positive, check_positive_array

__all__ = [
    "b_exact",
    "b_kappa",
    "log_b_kappa",
    "pi_kappa",
    "b_kappa_row_sum",
]


def b_exact(x, y):
    """Piecewise step kernel, evaluated from its case table (total, no division).

    Boundary detection ``|x| == |y|`` is an exact float comparison on purpose.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    ax, ay = np.abs(x), np.abs(y)
    s = np.sign(y)
    out = np.where(ax < ay, s, np.where((ax == ay) & (y != 0.0), 0.5 * s, 0.0))
    return out[()]


def _reduced(x, y, kappa):
    # b_kappa is even in x and odd in y: work with x >= 0, y >= 0.
    x = np.abs(np.asarray(x, dtype=float))
    y = np.asarray(y, dtype=float)
    sign = np.sign(y)
    y = np.abs(y)
    a = (x + y) / kappa
    b = (x - y) / kappa
    return sign, y, a, b


def b_kappa(x, y, kappa):
    """Smoothed step kernel ``(tanh((x+y)/k) - tanh((x-y)/k)) / 2``.

    Inside the plateau (``|x| <= |y|``) the two tanh terms have opposite signs
    and the plain difference is exact to rounding.  Outside it both terms
    saturate to the same value, so the difference is rewritten as

        exp(-2b) * (1 - exp(-4|y|/k)) / ((1 + exp(-2a)) (1 + exp(-2b)))

    with ``a = (|x|+|y|)/k > b = (|x|-|y|)/k > 0``.  This keeps full relative
    accuracy in the tails until the value underflows.  ``kappa`` may be an
    array broadcasting against ``x`` and ``y``.
    """
    kappa = check_positive_array(kappa, "kappa")
    sign, y, a, b = _reduced(x, y, kappa)
    with np.errstate(over="ignore", invalid="ignore"):
        inside = 0.5 * (np.tanh(a) - np.tanh(b))
        eb = np.exp(-2.0 * np.maximum(b, 0.0))
        tail = eb * -np.expm1(-4.0 * y / kappa) / ((1.0 + np.exp(-2.0 * a)) * (1.0 + eb))
    out = sign * np.where(b > 0.0, tail, inside)
    return out[()]


def log_b_kappa(x, y, kappa):
    """Natural log of ``|b_kappa(x, y, kappa)|``; ``-inf`` where ``y == 0``.

    Stays finite far into the tails where ``b_kappa`` itself underflows.
    """
    kappa = check_positive_array(kappa, "kappa")
    _, y, a, b = _reduced(x, y, kappa)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        inside = np.log(0.5 * (np.tanh(a) - np.tanh(b)))
        bp = np.maximum(b, 0.0)
        tail = (
            -2.0 * bp
            + np.log(-np.expm1(-4.0 * y / kappa))
            - np.log1p(np.exp(-2.0 * a))
            - np.log1p(np.exp(-2.0 * bp))
        )
    out = np.where(b > 0.0, tail, inside)
    out = np.where(y == 0.0, -np.inf, out)
    return out[()]


def _sine_arg(x, period):
    # sin(pi x / T) changes sign under x -> x + T; the kernel is even in its
    # first argument, so reducing x modulo T is exact in value.
    x = np.asarray(x, dtype=float)
    r = np.remainder(x + 0.5 * period, period) - 0.5 * period
    return np.sin(np.pi * r / period)


def pi_kappa(x, y, kappa, period):
    """Periodic kernel ``b_kappa(sin(pi x / T), sin(pi y / T), kappa)``."""
    kappa = check_positive_array(kappa, "kappa")
    period = check_positive(period, "period")
    sy = np.sin(np.pi * np.asarray(y, dtype=float) / period)
    return b_kappa(_sine_arg(x, period), sy, kappa)


def b_kappa_row_sum(t, n_landmarks, kappa):
    """Closed form of ``sum_{j<N} b_kappa(t - j, 1/2, kappa)``.

    The sum telescopes to ``b_kappa(t - (N - 1)/2, N/2, kappa)``, which is
    strictly positive for every real ``t``.
    """
    n = check_int(n_landmarks, "n_landmarks", minimum=1)
    t = np.asarray(t, dtype=float)
    return b_kappa(t - 0.5 * (n - 1), 0.5 * n, kappa)

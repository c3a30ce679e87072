"""Argument checking shared by the library modules and the estimator layer."""

from __future__ import annotations

import math
import numbers

import numpy as np


class DomainError(ValueError):
    """A numeric argument lies outside the domain of the operation."""


def check_positive(value, name: str) -> float:
    """Return ``value`` as a float, raising :class:`DomainError` unless it is finite and > 0."""
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise DomainError(f"{name} must be a real number, got {value!r}") from None
    if not math.isfinite(value) or value <= 0.0:
        raise DomainError(f"{name} must be a finite positive number, got {value!r}")
    return value


def check_positive_array(value, name: str):
    """Like :func:`check_positive` but also accepts arrays (returned as float arrays)."""
    if np.ndim(value) == 0:
        return check_positive(value, name)
    try:
        arr = np.asarray(value, dtype=float)
    except (TypeError, ValueError):
        raise DomainError(f"{name} must be an array of real numbers") from None
    if not np.all(np.isfinite(arr) & (arr > 0.0)):
        raise DomainError(f"every {name} must be a finite positive number")
    return arr


def check_int(value, name: str, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, (numbers.Integral, float, str)):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    try:
        ivalue = int(value)
    except (TypeError, ValueError):
        raise DomainError(f"{name} must be an integer, got {value!r}") from None
    if isinstance(value, float) and value != ivalue:
        raise DomainError(f"{name} must be an integer, got {value!r}")
    if minimum is not None and ivalue < minimum:
        raise DomainError(f"{name} must be >= {minimum}, got {ivalue}")
    return ivalue


def check_range(value, name: str, low: float, high: float) -> float:
    value = float(value)
    if not (low <= value <= high):
        raise DomainError(f"{name} must lie in [{low}, {high}], got {value!r}")
    return value


def check_points(points, name: str = "points") -> np.ndarray:
    """Coerce landmark coordinates to a finite float array of shape (N, D).

    A flat sequence is read as N one-dimensional landmarks.
    """
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2:
        raise ValueError(f"{name} must be a sequence of equal-length vectors")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must contain at least one landmark of dimension >= 1")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    return arr


def check_times(t) -> np.ndarray:
    arr = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("time values must be finite")
    return arr

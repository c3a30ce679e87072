"""Kappa-families of open and closed shapes.

A family is fixed by an ordered landmark set ``r_0 .. r_{N-1}`` in R^D.  For
every smoothing scale ``kappa > 0`` and time ``t`` the family point is an
affine combination of the landmarks,

    r_kappa(t) = sum_j w_j(t, kappa) r_j,   w_j >= 0,   sum_j w_j = 1,

with ``w_j = b_kappa(t - j, 1/2) / b_kappa(t - (N-1)/2, N/2)`` for open
shapes and ``w_j = pi_kappa(t - j, 1/2; N) / sum_i pi_kappa(t - i, 1/2; N)``
for closed shapes.  The weights are returned with every evaluation: they
certify that the point lies in the convex hull of the landmarks.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from ._validation import DomainError, check_int, check_points, check_positive, check_times
from .kernels import _sine_arg, b_kappa, b_kappa_row_sum, log_b_kappa

__all__ = [
    "Topology",
    "Quality",
    "LandmarkSet",
    "EvalResult",
    "SampledCurve",
    "KappaFamily",
    "RecoveryError",
    "kernel_weights",
    "eval_open",
    "eval_closed",
    "recover_landmark",
    "centroid",
    "sample",
    "transform",
    "DEFAULT_RECOVERY_KAPPA",
]

DEFAULT_RECOVERY_KAPPA = 1e-3
RECOVERY_RTOL = 1e-6

_TINY = np.finfo(float).tiny
# rows of the (times x landmarks) weight matrix evaluated per block
_BLOCK_ELEMENTS = 1 << 20


class Topology(str, enum.Enum):
    OPEN = "open"
    CLOSED = "closed"


class Quality(str, enum.Enum):
    EXACT = "exact"
    DENOMINATOR_CLAMPED = "denominator_clamped"
    OUTSIDE_CANONICAL_DOMAIN = "outside_canonical_domain"


# integer codes used in vectorised paths; order is severity
_QUALITY_CODES = (Quality.EXACT, Quality.OUTSIDE_CANONICAL_DOMAIN, Quality.DENOMINATOR_CLAMPED)


class RecoveryError(ValueError):
    """Small-kappa evaluation at a landmark index did not reproduce the landmark."""


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class LandmarkSet:
    """Ordered landmarks with an open/closed flag.

    Order is significant and repeated landmarks are kept: a repeated landmark
    simply carries more weight.
    """

    points: np.ndarray
    topology: Topology = Topology.OPEN
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "points", _freeze(check_points(self.points)))
        object.__setattr__(self, "topology", Topology(self.topology))
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != len(self.points):
                raise ValueError("labels must have one entry per landmark")
            object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def closed(self) -> bool:
        return self.topology is Topology.CLOSED

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, LandmarkSet):
            return NotImplemented
        return (
            self.topology is other.topology
            and self.points.shape == other.points.shape
            and bool(np.array_equal(self.points, other.points))
            and self.labels == other.labels
        )

    __hash__ = None

    def with_points(self, points) -> "LandmarkSet":
        return LandmarkSet(points, self.topology, self.labels)

    def with_topology(self, topology) -> "LandmarkSet":
        return LandmarkSet(self.points, topology, self.labels)

    def rolled(self, shift: int) -> "LandmarkSet":
        """Cyclically rotate the landmark order so that landmark ``shift`` comes first."""
        labels = None if self.labels is None else tuple(np.roll(self.labels, -shift))
        return LandmarkSet(np.roll(self.points, -shift, axis=0), self.topology, labels)


@dataclass(frozen=True)
class EvalResult:
    point: np.ndarray
    weights: np.ndarray
    quality: Quality = Quality.EXACT


@dataclass(frozen=True)
class SampledCurve:
    """Samples ``(t_i, r_kappa(t_i))`` of one family member on an increasing grid."""

    t: np.ndarray
    points: np.ndarray
    quality: tuple[Quality, ...]
    kappa: float
    topology: Topology = Topology.OPEN
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self):
        return len(self.t)


def _open_block(t, n, kappa):
    j = np.arange(n, dtype=float)
    den = b_kappa_row_sum(t, n, kappa)
    num = b_kappa(t[:, None] - j, 0.5, kappa)
    codes = np.where((t < 0.0) | (t > n - 1), 1, 0)
    clamped = den < _TINY
    with np.errstate(divide="ignore", invalid="ignore"):
        w = num / den[:, None]
    if np.any(clamped):
        # The quotient underflowed; redo those rows from log-kernels.
        tc = t[clamped]
        logs = log_b_kappa(tc[:, None] - j, 0.5, kappa)
        logd = log_b_kappa(tc - 0.5 * (n - 1), 0.5 * n, kappa)
        w[clamped] = np.exp(logs - logd[:, None])
        codes = np.where(clamped, 2, codes)
    return w, codes


def _closed_block(t, n, kappa):
    j = np.arange(n, dtype=float)
    sx = _sine_arg(t[:, None] - j, float(n))
    sy = np.sin(np.pi * 0.5 / n)
    num = b_kappa(sx, sy, kappa)
    den = num.sum(axis=1)
    clamped = den < _TINY
    codes = np.zeros(len(t), dtype=int)
    with np.errstate(divide="ignore", invalid="ignore"):
        w = num / den[:, None]
    if np.any(clamped):
        logs = log_b_kappa(sx[clamped], sy, kappa)
        logs -= logs.max(axis=1, keepdims=True)
        e = np.exp(logs)
        w[clamped] = e / e.sum(axis=1, keepdims=True)
        codes[clamped] = 2
    return w, codes


def kernel_weights(t, n, kappa, closed=False):
    """Affine weights of ``n`` ordered items at times ``t``.

    Returns ``(weights, codes)`` where ``weights`` has shape ``t.shape + (n,)``
    and ``codes`` holds 0 (exact), 1 (outside the canonical open domain) or
    2 (denominator underflow, weights rebuilt from log-kernels).
    """
    n = check_int(n, "n", minimum=1)
    kappa = check_positive(kappa, "kappa")
    t = check_times(t)
    shape = t.shape
    flat = t.ravel()
    block = max(1, _BLOCK_ELEMENTS // n)
    fn = _closed_block if closed else _open_block
    ws, cs = [], []
    for start in range(0, len(flat), block):
        w, c = fn(flat[start:start + block], n, kappa)
        ws.append(w)
        cs.append(c)
    if ws:
        weights = np.concatenate(ws, axis=0)
        codes = np.concatenate(cs)
    else:
        weights = np.empty((0, n))
        codes = np.empty(0, dtype=int)
    return weights.reshape(shape + (n,)), codes.reshape(shape)


class KappaFamily:
    """The one-parameter family of curves defined by a :class:`LandmarkSet`.

    ``family(t, kappa)`` returns points for an array of times;
    :meth:`evaluate` returns a single :class:`EvalResult` with its weights.
    """

    def __init__(self, landmarks):
        if not isinstance(landmarks, LandmarkSet):
            landmarks = LandmarkSet(landmarks)
        self.landmarks = landmarks

    def __repr__(self):
        lm = self.landmarks
        return f"KappaFamily(n={lm.n}, dim={lm.dim}, topology={lm.topology.value!r})"

    @property
    def n(self) -> int:
        return self.landmarks.n

    @property
    def dim(self) -> int:
        return self.landmarks.dim

    @property
    def closed(self) -> bool:
        return self.landmarks.closed

    @property
    def period(self) -> int | None:
        return self.n if self.closed else None

    def canonical_range(self) -> tuple[float, float]:
        return (0.0, float(self.n)) if self.closed else (0.0, float(self.n - 1))

    def weights(self, t, kappa):
        return kernel_weights(t, self.n, kappa, closed=self.closed)

    def __call__(self, t, kappa):
        w, _ = self.weights(t, kappa)
        return w @ self.landmarks.points

    def evaluate(self, t, kappa) -> EvalResult:
        w, code = self.weights(np.asarray(float(t)), kappa)
        return EvalResult(w @ self.landmarks.points, w, _QUALITY_CODES[int(code)])

    def centroid(self) -> np.ndarray:
        return self.landmarks.points.mean(axis=0)

    def recover(self, n, kappa=DEFAULT_RECOVERY_KAPPA, rtol=RECOVERY_RTOL) -> np.ndarray:
        return recover_landmark(self, n, kappa=kappa, rtol=rtol)

    def sample(self, kappa, t_start=None, t_end=None, count=None) -> SampledCurve:
        return sample(self, kappa, t_start, t_end, count)

    def transform(self, matrix) -> "KappaFamily":
        return transform(self, matrix)


def _as_family(family) -> KappaFamily:
    if isinstance(family, KappaFamily):
        return family
    return KappaFamily(family)


def eval_open(family, t, kappa) -> EvalResult:
    family = _as_family(family)
    if family.closed:
        raise ValueError("eval_open requires an open landmark set")
    return family.evaluate(t, kappa)


def eval_closed(family, t, kappa) -> EvalResult:
    family = _as_family(family)
    if not family.closed:
        raise ValueError("eval_closed requires a closed landmark set")
    return family.evaluate(t, kappa)


def recover_landmark(family, n, kappa=DEFAULT_RECOVERY_KAPPA, rtol=RECOVERY_RTOL) -> np.ndarray:
    """Evaluate at ``t = n`` with a small ``kappa`` and check it reproduces landmark ``n``.

    Raises :class:`RecoveryError` when the result is farther than
    ``rtol * (1 + max|r_j|)`` from the landmark.  Closed sets with many
    landmarks need a smaller ``kappa``: the periodic kernel compresses the
    landmark spacing to about ``pi / N`` in its sine argument.
    """
    family = _as_family(family)
    n = check_int(n, "n")
    if not 0 <= n < family.n:
        raise IndexError(f"landmark index {n} out of range for {family.n} landmarks")
    point = family.evaluate(n, kappa).point
    target = family.landmarks.points[n]
    scale = 1.0 + float(np.max(np.abs(family.landmarks.points)))
    err = float(np.max(np.abs(point - target)))
    if err > rtol * scale:
        raise RecoveryError(
            f"landmark {n} recovered to within {err:.3g} only (allowed {rtol * scale:.3g}); "
            f"use a smaller kappa than {kappa:g}"
        )
    return point


def centroid(family) -> np.ndarray:
    return _as_family(family).centroid()


def sample(family, kappa, t_start=None, t_end=None, count=None) -> SampledCurve:
    """Evaluate on ``count`` evenly spaced times, both ends included.

    Defaults: ``[0, N-1]`` for open and ``[0, N]`` (one full period) for
    closed families, with ``10 N + 1`` samples.
    """
    family = _as_family(family)
    kappa = check_positive(kappa, "kappa")
    lo, hi = family.canonical_range()
    t_start = lo if t_start is None else float(t_start)
    t_end = hi if t_end is None else float(t_end)
    count = 10 * family.n + 1 if count is None else check_int(count, "count", minimum=2)
    if not t_start < t_end:
        if family.n == 1 and t_start == t_end == 0.0:
            t_end = 1.0
        else:
            raise ValueError(f"sample range must satisfy t_start < t_end, got [{t_start}, {t_end}]")
    t = np.linspace(t_start, t_end, count)
    w, codes = family.weights(t, kappa)
    pts = w @ family.landmarks.points
    quality = tuple(_QUALITY_CODES[c] for c in codes)
    t.setflags(write=False)
    pts.setflags(write=False)
    return SampledCurve(t, pts, quality, kappa, family.landmarks.topology)


def transform(family, matrix) -> KappaFamily:
    """Family over the landmarks mapped by ``matrix`` (shape ``(D', D)``).

    Evaluation commutes with the map because every point is a fixed linear
    combination of the landmarks.
    """
    family = _as_family(family)
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[1] != family.dim:
        raise DomainError(
            f"matrix must have shape (D', {family.dim}), got {m.shape}"
        )
    return KappaFamily(family.landmarks.with_points(family.landmarks.points @ m.T))

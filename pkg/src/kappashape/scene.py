"""Scenes: kappa-families blended over a member index ``q`` with scale ``eta``.

A scene plays the same game one level up.  Its members are families, each
evaluated at its own ``kappa_j`` and a shared time ``t``; the members are then
combined with the same affine weights used for landmarks, indexed by ``q``:
type I uses the open (telescoping) weights and type II the periodic ones.
Small ``eta`` isolates member ``round(q)``; large ``eta`` averages them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from ._validation import check_int, check_positive, check_times
from .shape import (
    RECOVERY_RTOL,
    EvalResult,
    KappaFamily,
    Quality,
    RecoveryError,
    _QUALITY_CODES,
    kernel_weights,
)

__all__ = [
    "SceneType",
    "Scene",
    "SceneMember",
    "eval_scene",
    "recover_member",
    "DEFAULT_RECOVERY_ETA",
]

DEFAULT_RECOVERY_ETA = 1e-3


class SceneType(str, enum.Enum):
    TYPE_I = "I"
    TYPE_II = "II"


def _severity(q: Quality) -> int:
    return _QUALITY_CODES.index(q)


class Scene:
    """Ordered members ``(family, kappa_j)`` sharing one dimension.

    Members may be :class:`KappaFamily` objects, landmark sets, or
    :class:`SceneMember` adapters wrapping another scene.
    """

    def __init__(self, members, kappas, scene_type=SceneType.TYPE_I):
        members = [m if isinstance(m, (KappaFamily, SceneMember)) else KappaFamily(m) for m in members]
        if not members:
            raise ValueError("a scene needs at least one member")
        kappas = [check_positive(k, f"kappa[{i}]") for i, k in enumerate(np.atleast_1d(kappas))]
        if len(kappas) == 1 and len(members) > 1:
            kappas = kappas * len(members)
        if len(kappas) != len(members):
            raise ValueError("one kappa per member is required")
        dims = {m.dim for m in members}
        if len(dims) != 1:
            raise ValueError(f"scene members must share one dimension, got {sorted(dims)}")
        self.members = tuple(members)
        self.kappas = tuple(kappas)
        self.scene_type = SceneType(scene_type)

    def __repr__(self):
        return f"Scene(m={self.m}, dim={self.dim}, type={self.scene_type.value})"

    @property
    def m(self) -> int:
        return len(self.members)

    @property
    def dim(self) -> int:
        return self.members[0].dim

    @property
    def closed(self) -> bool:
        return self.scene_type is SceneType.TYPE_II

    def member_points(self, t) -> np.ndarray:
        """Member evaluations at times ``t``: shape ``t.shape + (M, D)``."""
        t = check_times(t)
        return np.stack([mem(t, k) for mem, k in zip(self.members, self.kappas)], axis=-2)

    def __call__(self, t, q, eta):
        w, _ = kernel_weights(np.asarray(float(q)), self.m, eta, closed=self.closed)
        return np.einsum("m,...md->...d", w, self.member_points(t))

    def evaluate(self, t, q, eta) -> EvalResult:
        return eval_scene(self, t, q, eta)

    def as_member(self, q) -> "SceneMember":
        return SceneMember(self, q)


@dataclass(frozen=True)
class SceneMember:
    """A scene frozen at member index ``q``, usable as a member of a larger scene.

    The member's own smoothing scale is passed through as the inner ``eta``.
    """

    scene: Scene
    q: float

    @property
    def dim(self) -> int:
        return self.scene.dim

    def __call__(self, t, kappa):
        return self.scene(t, self.q, kappa)

    def evaluate(self, t, kappa) -> EvalResult:
        return eval_scene(self.scene, t, self.q, kappa)


def eval_scene(scene: Scene, t, q, eta) -> EvalResult:
    """Blend the member evaluations at time ``t`` with weights indexed by ``q``."""
    eta = check_positive(eta, "eta")
    w, code = kernel_weights(np.asarray(float(q)), scene.m, eta, closed=scene.closed)
    results = [mem.evaluate(t, k) for mem, k in zip(scene.members, scene.kappas)]
    pts = np.stack([r.point for r in results])
    quality = max([_QUALITY_CODES[int(code)]] + [r.quality for r in results], key=_severity)
    return EvalResult(w @ pts, w, quality)


def recover_member(scene: Scene, m, t, eta=DEFAULT_RECOVERY_ETA, rtol=RECOVERY_RTOL) -> np.ndarray:
    """Evaluate the scene at ``q = m`` with small ``eta``; check it matches member ``m``."""
    m = check_int(m, "m")
    if not 0 <= m < scene.m:
        raise IndexError(f"member index {m} out of range for {scene.m} members")
    point = eval_scene(scene, t, m, eta).point
    own = scene.members[m].evaluate(t, scene.kappas[m]).point
    scale = 1.0 + float(np.max(np.abs(scene.member_points(np.asarray(float(t))))))
    err = float(np.max(np.abs(point - own)))
    if err > rtol * scale:
        raise RecoveryError(
            f"member {m} recovered to within {err:.3g} only (allowed {rtol * scale:.3g}); "
            f"use a smaller eta than {eta:g}"
        )
    return point


"""Landmark generators for the example families.

Every generator is a pure function of its parameters (and seed, for the
random one) and returns a :class:`~kappashape.shape.LandmarkSet`.
:class:`GeneratorSpec` is the declarative form used by config files and the
command line.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ._validation import DomainError, check_int, check_points, check_positive, check_range
from .shape import LandmarkSet, Topology

__all__ = [
    "GeneratorKind",
    "GeneratorSpec",
    "RNG_ALGORITHM",
    "polygon_landmarks",
    "star_landmarks",
    "planar_graph_example_landmarks",
    "lemniscate_landmarks",
    "hilbert_landmarks",
    "logistic_landmarks",
    "lorenz_landmarks",
    "trefoil_landmarks",
    "random_uniform_landmarks",
    "explicit_landmarks",
    "triangle_landmarks",
    "repeated_triangle_landmarks",
    "waveform_landmarks",
    "LORENZ_DEFAULT_PARAMS",
]

# Recorded in file metadata so that published seeds stay reproducible.
RNG_ALGORITHM = "numpy.random.Generator(PCG64)"

LORENZ_DEFAULT_PARAMS = dict(
    sigma=10.0, rho=28.0, beta=8.0 / 3.0, delta=0.01,
    init=(2.5704, 3.6945, 16.4286), n=1000,
)


def _unit_circle(p: int) -> np.ndarray:
    ang = 2.0 * np.pi * np.arange(1, p + 1) / p
    return np.column_stack([np.cos(ang), np.sin(ang)])


def polygon_landmarks(p) -> LandmarkSet:
    """Vertices ``(cos 2pi(j+1)/P, sin 2pi(j+1)/P)`` of a regular P-gon, closed."""
    p = check_int(p, "P", minimum=3)
    return LandmarkSet(_unit_circle(p), Topology.CLOSED)


def star_landmarks(p) -> LandmarkSet:
    """The P polygon vertices, each preceded by the origin (2P landmarks, closed)."""
    p = check_int(p, "P", minimum=3)
    pts = np.zeros((2 * p, 2))
    pts[1::2] = _unit_circle(p)
    return LandmarkSet(pts, Topology.CLOSED)


def planar_graph_example_landmarks() -> LandmarkSet:
    """Hexagon vertices joined through the origin: ten landmarks, closed.

    Origin/vertex pairs for the first four vertices, then the last two
    vertices back to back.
    """
    hexagon = _unit_circle(6)
    zero = np.zeros(2)
    pts = [zero, hexagon[0], zero, hexagon[1], zero, hexagon[2], zero, hexagon[3], hexagon[4], hexagon[5]]
    return LandmarkSet(np.array(pts), Topology.CLOSED)


class LemniscateVariant(str, enum.Enum):
    SQUARE4 = "square4"
    SIX_POINT = "sixpoint"


def lemniscate_landmarks(variant="square4") -> LandmarkSet:
    variant = LemniscateVariant(str(variant).lower())
    if variant is LemniscateVariant.SQUARE4:
        pts = [(-1, -1), (1, 1), (1, -1), (-1, 1)]
    else:
        pts = [(-1, -1), (0, 0), (1, -1), (1, 1), (0, 0), (-1, 1)]
    return LandmarkSet(np.array(pts, dtype=float), Topology.CLOSED)


def hilbert_landmarks(q) -> LandmarkSet:
    """Open Hilbert-curve landmarks after ``q`` substitution rounds (``4**q`` points).

    The four maps
    (X, Y) -> ((Y-1)/2, (X-1)/2), ((X-1)/2, (Y+1)/2), ((X+1)/2, (Y+1)/2), ((1-Y)/2, (-1-X)/2)
    are each applied to the whole previous curve, and the four images are
    concatenated in that order.  Listing the four children of each landmark
    together instead would give a disconnected point order from ``q = 2`` on.
    Every step is exact in binary floating point.
    """
    q = check_int(q, "Q", minimum=0)
    x = np.zeros(1)
    y = np.zeros(1)
    for _ in range(q):
        x, y = (
            np.concatenate([(y - 1) / 2, (x - 1) / 2, (x + 1) / 2, (1 - y) / 2]),
            np.concatenate([(x - 1) / 2, (y + 1) / 2, (y + 1) / 2, (-1 - x) / 2]),
        )
    return LandmarkSet(np.column_stack([x, y]), Topology.OPEN)


def logistic_landmarks(mu, y0, n) -> LandmarkSet:
    """``n`` iterates of ``y -> mu y (1 - y)`` starting at (and including) ``y0``; open, 1-D."""
    mu = check_range(mu, "mu", 0.0, 4.0)
    y0 = check_range(y0, "y0", 0.0, 1.0)
    n = check_int(n, "N", minimum=1)
    out = np.empty(n)
    out[0] = y0
    for j in range(1, n):
        out[j] = mu * out[j - 1] * (1.0 - out[j - 1])
    return LandmarkSet(out[:, None], Topology.OPEN)


def lorenz_landmarks(sigma=10.0, rho=28.0, beta=8.0 / 3.0, delta=0.01,
                     init=(2.5704, 3.6945, 16.4286), n=1000) -> LandmarkSet:
    """Forward-Euler samples of the Lorenz flow, ``n`` points including ``init``; open, 3-D."""
    delta = check_positive(delta, "delta")
    n = check_int(n, "N", minimum=1)
    init = np.asarray(init, dtype=float)
    if init.shape != (3,):
        raise DomainError("init must be a 3-vector")
    sigma, rho, beta = float(sigma), float(rho), float(beta)
    out = np.empty((n, 3))
    out[0] = init
    for j in range(1, n):
        x, y, z = out[j - 1]
        out[j] = (
            x + delta * sigma * (y - x),
            y + delta * (x * (rho - z) - y),
            z + delta * (x * y - beta * z),
        )
    return LandmarkSet(out, Topology.OPEN)


def trefoil_landmarks() -> LandmarkSet:
    """Nine landmarks read off a trefoil diagram; z = 0 under a crossing, 1 over it."""
    x = [0.5, 0.3, 0.5, 1, 0.7, 0.3, 0, 0.5, 0.7]
    y = [0, 0.4, 0.8, 0.8, 0.4, 0.4, 0.8, 0.8, 0.4]
    z = [1, 0, 1, 1, 0, 1, 1, 0, 1]
    return LandmarkSet(np.column_stack([x, y, z]).astype(float), Topology.CLOSED)


def random_uniform_landmarks(n, d=2, seed=0) -> LandmarkSet:
    """``n`` i.i.d. points uniform on ``[0, 1]^d`` from a seeded PCG64 generator; open."""
    n = check_int(n, "N", minimum=1)
    d = check_int(d, "D", minimum=1)
    seed = check_int(seed, "seed", minimum=0)
    rng = np.random.default_rng(seed)
    return LandmarkSet(rng.random((n, d)), Topology.OPEN)


def explicit_landmarks(points, topology="open") -> LandmarkSet:
    return LandmarkSet(check_points(points), Topology(topology))


def triangle_landmarks(topology="closed") -> LandmarkSet:
    return LandmarkSet([(0.0, 0.0), (4.0, 3.0), (7.0, 1.0)], topology)


def repeated_triangle_landmarks() -> LandmarkSet:
    """Triangle with the origin repeated three times; the (4,3)-(7,1) edge disappears."""
    return LandmarkSet([(0.0, 0.0), (4.0, 3.0), (0.0, 0.0), (7.0, 1.0), (0.0, 0.0)], Topology.CLOSED)


def waveform_landmarks() -> LandmarkSet:
    """Five-value periodic waveform (1, 4, 2, 2, 1); closed, 1-D."""
    return LandmarkSet(np.array([1.0, 4.0, 2.0, 2.0, 1.0])[:, None], Topology.CLOSED)


class GeneratorKind(str, enum.Enum):
    POLYGON = "polygon"
    STAR = "star"
    PLANAR_GRAPH = "planar-graph"
    LEMNISCATE_SQUARE = "lemniscate-square"
    LEMNISCATE_SIX = "lemniscate-six"
    HILBERT = "hilbert"
    LOGISTIC = "logistic"
    LORENZ = "lorenz"
    TREFOIL = "trefoil"
    RANDOM = "random"
    EXPLICIT = "explicit"
    TRIANGLE = "triangle"
    REPEATED_TRIANGLE = "repeated-triangle"
    WAVEFORM = "waveform"


# kind -> (builder, allowed parameter names)
_BUILDERS = {
    GeneratorKind.POLYGON: (lambda p: polygon_landmarks(p["p"]), {"p"}),
    GeneratorKind.STAR: (lambda p: star_landmarks(p["p"]), {"p"}),
    GeneratorKind.PLANAR_GRAPH: (lambda p: planar_graph_example_landmarks(), set()),
    GeneratorKind.LEMNISCATE_SQUARE: (lambda p: lemniscate_landmarks("square4"), set()),
    GeneratorKind.LEMNISCATE_SIX: (lambda p: lemniscate_landmarks("sixpoint"), set()),
    GeneratorKind.HILBERT: (lambda p: hilbert_landmarks(p["q"]), {"q"}),
    GeneratorKind.LOGISTIC: (lambda p: logistic_landmarks(p["mu"], p["y0"], p["n"]), {"mu", "y0", "n"}),
    GeneratorKind.LORENZ: (lambda p: lorenz_landmarks(**p), {"sigma", "rho", "beta", "delta", "init", "n"}),
    GeneratorKind.TREFOIL: (lambda p: trefoil_landmarks(), set()),
    GeneratorKind.RANDOM: (lambda p: random_uniform_landmarks(p["n"], p.get("d", 2), p["seed"]), {"n", "d", "seed"}),
    GeneratorKind.EXPLICIT: (lambda p: explicit_landmarks(p["points"], p.get("topology", "open")), {"points", "topology"}),
    GeneratorKind.TRIANGLE: (lambda p: triangle_landmarks(p.get("topology", "closed")), {"topology"}),
    GeneratorKind.REPEATED_TRIANGLE: (lambda p: repeated_triangle_landmarks(), set()),
    GeneratorKind.WAVEFORM: (lambda p: waveform_landmarks(), set()),
}

_DEFAULTS = {
    GeneratorKind.LOGISTIC: dict(mu=3.5, y0=0.3, n=150),
    GeneratorKind.LORENZ: dict(LORENZ_DEFAULT_PARAMS),
    GeneratorKind.RANDOM: dict(n=50, d=2),
}


@dataclass(frozen=True)
class GeneratorSpec:
    """Declarative generator call: ``kind`` plus keyword parameters.

    ``seed`` only applies to :attr:`GeneratorKind.RANDOM`.
    """

    kind: GeneratorKind
    params: dict[str, Any] = field(default_factory=dict)
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", GeneratorKind(self.kind))
        _, allowed = _BUILDERS[self.kind]
        unknown = sorted(set(self.params) - allowed - {"seed"})
        if unknown:
            raise DomainError(f"{self.kind.value}: unknown parameter(s) {', '.join(unknown)}")

    def resolved_params(self) -> dict[str, Any]:
        params = dict(_DEFAULTS.get(self.kind, {}))
        params.update(self.params)
        if self.kind is GeneratorKind.RANDOM:
            params["seed"] = self.seed if self.seed is not None else params.get("seed", 0)
        else:
            params.pop("seed", None)
        if "init" in params:
            params["init"] = tuple(float(v) for v in params["init"])
        return params

    def build(self) -> LandmarkSet:
        builder, _ = _BUILDERS[self.kind]
        params = self.resolved_params()
        try:
            return builder(params)
        except KeyError as exc:
            raise DomainError(f"{self.kind.value}: missing parameter {exc.args[0]!r}") from None

    def to_dict(self) -> dict[str, Any]:
        params = self.resolved_params()
        if self.kind is GeneratorKind.EXPLICIT:
            params.pop("points", None)
        out = {"kind": self.kind.value, "params": _jsonable(params)}
        if self.kind is GeneratorKind.RANDOM:
            out["seed"] = params["seed"]
            out["rng"] = RNG_ALGORITHM
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "GeneratorSpec":
        if "kind" not in data:
            raise DomainError("generator spec needs a 'kind' field")
        return cls(data["kind"], dict(data.get("params", {})), data.get("seed"))


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in sorted(value.items())}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def reference_generators() -> dict[str, LandmarkSet]:
    """Every landmark set used by the example figures, keyed by a short name."""
    return {
        "logistic": logistic_landmarks(3.5, 0.3, 150),
        "waveform": waveform_landmarks(),
        "random50": random_uniform_landmarks(50, 2, seed=0),
        "triangle": triangle_landmarks(),
        "repeated-triangle": repeated_triangle_landmarks(),
        "hexagon": polygon_landmarks(6),
        "star6": star_landmarks(6),
        "planar-graph": planar_graph_example_landmarks(),
        "lemniscate-square": lemniscate_landmarks("square4"),
        "lemniscate-six": lemniscate_landmarks("sixpoint"),
        "hilbert5": hilbert_landmarks(5),
        "trefoil": trefoil_landmarks(),
        "lorenz": lorenz_landmarks(**LORENZ_DEFAULT_PARAMS),
    }


__all__ += ["reference_generators", "LemniscateVariant"]

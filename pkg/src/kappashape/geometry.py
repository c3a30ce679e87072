"""Independent checks on evaluated curves.

* planar convex hulls and point containment (Andrew's monotone chain),
* the affine-weight certificate, which works in any dimension,
* crossings of the xy-projection of a closed 3-D polyline, with over/under
  information, as the knot/unknot observable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .shape import EvalResult, KappaFamily, SampledCurve, sample

__all__ = [
    "ConvexHull2D",
    "Crossing",
    "CrossingReport",
    "hull_2d",
    "contains_2d",
    "weight_certificate_contains",
    "projected_crossings",
    "crossing_sweep",
    "DEFAULT_CONTAINMENT_TOL",
]

DEFAULT_CONTAINMENT_TOL = 1e-9


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class ConvexHull2D:
    """Extreme points in counterclockwise order, no three collinear.

    Degenerate inputs give one vertex (all points equal) or two (all collinear).
    """

    vertices: np.ndarray

    def __len__(self):
        return len(self.vertices)

    @property
    def diameter(self) -> float:
        v = self.vertices
        if len(v) < 2:
            return 0.0
        return float(np.max(np.linalg.norm(v[:, None, :] - v[None, :, :], axis=-1)))

    def signed_distance(self, points) -> np.ndarray:
        """Largest outward distance over the hull edges; <= 0 inside.

        For one- and two-vertex hulls this is the Euclidean distance to the
        point or segment.
        """
        p = np.atleast_2d(np.asarray(points, dtype=float))
        v = self.vertices
        if len(v) == 1:
            return np.linalg.norm(p - v[0], axis=1)
        if len(v) == 2:
            d = v[1] - v[0]
            s = np.clip((p - v[0]) @ d / (d @ d), 0.0, 1.0)
            return np.linalg.norm(p - (v[0] + s[:, None] * d), axis=1)
        a = v
        b = np.roll(v, -1, axis=0)
        e = b - a
        length = np.linalg.norm(e, axis=1)
        # outward normal of a ccw edge is (ey, -ex)
        rel = p[:, None, :] - a[None, :, :]
        dist = (rel[..., 0] * e[:, 1] - rel[..., 1] * e[:, 0]) / length
        return dist.max(axis=1)

    def contains(self, p, tol=DEFAULT_CONTAINMENT_TOL) -> bool:
        return bool(np.all(self.signed_distance(p) <= tol))


def hull_2d(points) -> ConvexHull2D:
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("hull_2d expects an array of 2-D points")
    if len(pts) == 0:
        raise ValueError("hull_2d needs at least one point")
    uniq = sorted(set(map(tuple, pts.tolist())))
    if len(uniq) == 1:
        return ConvexHull2D(np.array(uniq))

    def half(seq):
        chain = []
        for p in seq:
            while len(chain) >= 2 and _cross(chain[-2], chain[-1], p) <= 0.0:
                chain.pop()
            chain.append(p)
        return chain

    lower = half(uniq)
    upper = half(reversed(uniq))
    verts = lower[:-1] + upper[:-1]
    if len(verts) == 2 or (len(verts) > 2 and all(
        _cross(verts[0], verts[1], q) == 0.0 for q in verts[2:]
    )):
        verts = [uniq[0], uniq[-1]]
    return ConvexHull2D(np.array(verts, dtype=float))


def contains_2d(hull: ConvexHull2D, p, tol=DEFAULT_CONTAINMENT_TOL) -> bool:
    """True iff ``p`` is inside ``hull`` or within ``tol`` of its boundary."""
    return hull.contains(p, tol)


def weight_certificate_contains(result, tol=1e-12) -> bool:
    """Containment certificate from affine weights: all >= -tol and summing to 1 within tol.

    Accepts an :class:`EvalResult` or a bare weight vector (or a matrix of
    weight rows, all of which must pass).
    """
    w = result.weights if isinstance(result, EvalResult) else result
    w = np.atleast_2d(np.asarray(w, dtype=float))
    if w.size == 0 or not np.all(np.isfinite(w)):
        return False
    return bool(np.all(w >= -tol) and np.all(np.abs(w.sum(axis=-1) - 1.0) <= tol))


# --------------------------------------------------------------------------
# projected crossings


@dataclass(frozen=True)
class Crossing:
    """One crossing of the xy-projection.

    ``t_a < t_b`` are the curve times of the two strands; ``over_index`` is 0
    when strand ``a`` has the larger z there and 1 otherwise.
    """

    t_a: float
    t_b: float
    over_index: int
    point: tuple[float, float]
    z_a: float
    z_b: float
    angle: float
    kind: str = "transverse"


@dataclass
class CrossingReport:
    crossing_count: int
    crossings: list[Crossing]
    degenerate: list[Crossing] = field(default_factory=list)
    reduced_count: int = 0
    nugatory: list[Crossing] = field(default_factory=list)
    kappa: float | None = None

    def to_dict(self) -> dict:
        def row(c):
            return {"t_a": c.t_a, "t_b": c.t_b, "over_index": c.over_index, "x": c.point[0],
                    "y": c.point[1], "z_a": c.z_a, "z_b": c.z_b, "angle": c.angle, "kind": c.kind}

        return {
            "kappa": self.kappa,
            "crossing_count": self.crossing_count,
            "reduced_count": self.reduced_count,
            "crossings": [row(c) for c in self.crossings],
            "degenerate": [row(c) for c in self.degenerate],
        }


def _collapse(xy, z, t, tol):
    """Merge runs of consecutive samples closer than ``tol`` (plateaus of the curve)."""
    keep = [0]
    last = xy[0]
    for i in range(1, len(xy)):
        if np.hypot(*(xy[i] - last)) > tol:
            keep.append(i)
            last = xy[i]
    while len(keep) > 1 and np.hypot(*(xy[keep[-1]] - xy[keep[0]])) <= tol:
        keep.pop()
    keep = np.array(keep)
    return xy[keep], z[keep], t[keep]


def _interleaved(angles_a, angles_b, guard):
    """Whether two strands through a common vertex cross (directions alternate)."""
    tagged = [(a % (2 * np.pi), 0) for a in angles_a] + [(b % (2 * np.pi), 1) for b in angles_b]
    tagged.sort()
    gaps = [(tagged[(i + 1) % 4][0] - tagged[i][0]) % (2 * np.pi) for i in range(4)]
    if min(gaps) < guard:
        return None
    tags = [tag for _, tag in tagged]
    return tags[0] != tags[1] and tags[1] != tags[2] and tags[2] != tags[3]


def projected_crossings(curve, merge_tol=None, angle_guard=1e-3, z_tol=1e-12) -> CrossingReport:
    """Crossings of the xy-projection of a closed, densely sampled 3-D curve.

    The polyline through the samples is cleaned first: consecutive samples
    closer than ``merge_tol`` (default ``1e-9`` times the xy extent) are
    merged, which removes the plateaus small ``kappa`` produces around each
    landmark.  Then three kinds of events are found between non-adjacent
    pieces:

    * proper segment/segment intersections,
    * a vertex lying on the interior of another segment,
    * two vertices coinciding (two passes through the same landmark).

    Touching events count as crossings only when the strands really pass
    through each other.  Events with a crossing angle below ``angle_guard``
    (radians), overlapping strands, or equal heights are listed as
    ``degenerate`` and not counted.

    ``reduced_count`` repeatedly discards nugatory crossings (one of whose two
    loops meets no other crossing) and counts what is left.
    """
    if isinstance(curve, SampledCurve):
        t, pts = np.asarray(curve.t, float), np.asarray(curve.points, float)
        kappa = curve.kappa
    else:
        t, pts = (np.asarray(a, float) for a in curve)
        kappa = None
    if pts.ndim != 2 or pts.shape[1] != 3:
        raise ValueError("projected_crossings needs a 3-D curve")
    if len(pts) < 4:
        raise ValueError("projected_crossings needs at least 4 samples")
    if np.max(np.abs(pts[0] - pts[-1])) > 1e-9:
        raise ValueError("curve is not closed: first and last samples differ")
    period = t[-1] - t[0]
    xy, z, t = pts[:-1, :2], pts[:-1, 2], t[:-1]
    extent = float(np.max(np.ptp(xy, axis=0))) if len(xy) else 0.0
    tol = (1e-9 * max(extent, 1e-300)) if merge_tol is None else float(merge_tol)
    xy, z, t = _collapse(xy, z, t, tol)
    m = len(xy)
    found: list[Crossing] = []
    degenerate: list[Crossing] = []
    if m < 3:
        return CrossingReport(0, [], [], 0, [], kappa)

    nxt = np.roll(np.arange(m), -1)
    a0, a1 = xy, xy[nxt]
    d = a1 - a0
    seg_len = np.hypot(d[:, 0], d[:, 1])
    t1 = np.where(nxt == 0, t[0] + period, t[nxt])

    def record(i, s, k, u, point, kind, sin_angle, forced_degenerate=False):
        ta = t[i] + s * (t1[i] - t[i])
        tb = t[k] + u * (t1[k] - t[k])
        za = z[i] + s * (z[nxt[i]] - z[i])
        zb = z[k] + u * (z[nxt[k]] - z[k])
        if ta > tb:
            ta, tb, za, zb = tb, ta, zb, za
        angle = float(np.arcsin(min(1.0, abs(sin_angle))))
        c = Crossing(float(ta), float(tb), 0 if za > zb else 1, (float(point[0]), float(point[1])),
                     float(za), float(zb), angle, kind)
        if forced_degenerate or angle < angle_guard or abs(za - zb) <= z_tol:
            degenerate.append(c)
        else:
            found.append(c)

    # proper intersections, row blocks of segment pairs (i < k, not adjacent)
    block = max(1, (1 << 22) // m)
    for start in range(0, m, block):
        ii = np.arange(start, min(m, start + block))
        I, K = np.meshgrid(ii, np.arange(m), indexing="ij")
        mask = (K >= I + 2) & ~((I == 0) & (K == m - 1))
        I, K = I[mask], K[mask]
        if not len(I):
            continue
        di, dk = d[I], d[K]
        li, lk = seg_len[I], seg_len[K]
        w = a0[K] - a0[I]
        o1 = (di[:, 0] * w[:, 1] - di[:, 1] * w[:, 0]) / li
        w2 = a1[K] - a0[I]
        o2 = (di[:, 0] * w2[:, 1] - di[:, 1] * w2[:, 0]) / li
        o3 = (dk[:, 0] * -w[:, 1] - dk[:, 1] * -w[:, 0]) / lk
        w4 = a1[I] - a0[K]
        o4 = (dk[:, 0] * w4[:, 1] - dk[:, 1] * w4[:, 0]) / lk
        hit = (o1 * o2 < 0) & (o3 * o4 < 0) & (np.minimum.reduce([abs(o1), abs(o2), abs(o3), abs(o4)]) > tol)
        for i, k, wi, p1, p2 in zip(I[hit], K[hit], w[hit], o1[hit], o2[hit]):
            s = p1 / (p1 - p2)  # fraction along segment k
            den = d[i, 0] * d[k, 1] - d[i, 1] * d[k, 0]
            u_i = (wi[0] * d[k, 1] - wi[1] * d[k, 0]) / den
            point = a0[i] + u_i * d[i]
            record(i, u_i, k, s, point, "transverse", den / (seg_len[i] * seg_len[k]))

    # two or more passes through one point: cluster coincident vertices and
    # test each pair of passes (maximal runs of consecutive vertices) once
    tree = cKDTree(xy)
    parent = list(range(m))

    def root(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a, b in tree.query_pairs(tol):
        parent[root(a)] = root(b)
    clusters: dict[int, list[int]] = {}
    for i in range(m):
        clusters.setdefault(root(i), []).append(i)
    in_cluster = np.zeros(m, dtype=bool)
    for members in clusters.values():
        if len(members) < 2:
            continue
        in_cluster[members] = True
        passes = _runs(members, m)
        if len(passes) < 2:
            continue
        centre = xy[members].mean(axis=0)
        for pa in range(len(passes)):
            for pb in range(pa + 1, len(passes)):
                (fa, la), (fb, lb) = passes[pa], passes[pb]
                ends_a = (xy[(fa - 1) % m] - centre, xy[(la + 1) % m] - centre)
                ends_b = (xy[(fb - 1) % m] - centre, xy[(lb + 1) % m] - centre)
                inter = _interleaved([np.arctan2(v[1], v[0]) for v in ends_a],
                                     [np.arctan2(v[1], v[0]) for v in ends_b], angle_guard)
                if inter is False:
                    continue
                da = ends_a[1] - ends_a[0]
                db = ends_b[1] - ends_b[0]
                sin_angle = (da[0] * db[1] - da[1] * db[0]) / (np.hypot(*da) * np.hypot(*db))
                ma = _run_mid(fa, la, m)
                mb = _run_mid(fb, lb, m)
                record(ma, 0.0, mb, 0.0, centre, "vertex", sin_angle, forced_degenerate=inter is None)

    # a vertex on the inside of another segment
    reach = float(seg_len.max()) + tol
    for k, near in enumerate(tree.query_ball_point((a0 + a1) / 2, reach / 2 + tol)):
        for a in near:
            if a == k or a == nxt[k] or in_cluster[a]:
                continue
            rel = xy[a] - a0[k]
            s = (rel @ d[k]) / seg_len[k] ** 2
            if not (0.0 < s < 1.0):
                continue
            if min(s, 1.0 - s) * seg_len[k] <= tol:
                continue
            off = (d[k, 0] * rel[1] - d[k, 1] * rel[0]) / seg_len[k]
            if abs(off) > tol:
                continue
            prev_off = (d[k, 0] * (xy[(a - 1) % m] - a0[k])[1] - d[k, 1] * (xy[(a - 1) % m] - a0[k])[0]) / seg_len[k]
            next_off = (d[k, 0] * (xy[(a + 1) % m] - a0[k])[1] - d[k, 1] * (xy[(a + 1) % m] - a0[k])[0]) / seg_len[k]
            if abs(prev_off) <= tol or abs(next_off) <= tol:
                record(a, 0.0, k, s, xy[a], "vertex", 0.0, forced_degenerate=True)
            elif prev_off * next_off < 0:
                dv = xy[(a + 1) % m] - xy[(a - 1) % m]
                sin_angle = (dv[0] * d[k, 1] - dv[1] * d[k, 0]) / (np.hypot(*dv) * seg_len[k])
                record(a, 0.0, k, s, xy[a], "vertex", sin_angle)

    found.sort(key=lambda c: (c.t_a, c.t_b))
    degenerate.sort(key=lambda c: (c.t_a, c.t_b))
    essential, nugatory = _reduce_nugatory(found, t[0], period)
    return CrossingReport(len(found), found, degenerate, len(essential), nugatory, kappa)


def _runs(members, m):
    """Split sorted vertex indices into maximal cyclic runs ``(first, last)``."""
    runs = []
    start = prev = members[0]
    for i in members[1:]:
        if i != prev + 1:
            runs.append((start, prev))
            start = i
        prev = i
    runs.append((start, prev))
    if len(runs) > 1 and runs[0][0] == 0 and runs[-1][1] == m - 1:
        runs[0] = (runs[-1][0], runs[0][1])
        runs.pop()
    return runs


def _run_mid(first, last, m):
    length = (last - first) % m
    return (first + length // 2) % m


def _reduce_nugatory(crossings, t0, period):
    """Drop, repeatedly, crossings whose loop ``[t_a, t_b]`` or its complement holds no other crossing."""
    live = list(crossings)
    dropped = []
    changed = True
    while changed:
        changed = False
        for c in live:
            inner = outer = 0
            for o in live:
                if o is c:
                    continue
                for tt in (o.t_a, o.t_b):
                    tt = t0 + (tt - t0) % period
                    if c.t_a < tt < c.t_b:
                        inner += 1
                    else:
                        outer += 1
            if inner == 0 or outer == 0:
                live.remove(c)
                dropped.append(c)
                changed = True
                break
    return live, dropped


def crossing_sweep(family: KappaFamily, kappas, samples=2000):
    """Crossing reports over a kappa sweep; ``samples`` intervals per period."""
    if not family.closed or family.dim != 3:
        raise ValueError("crossing sweeps need a closed 3-D landmark set")
    reports = []
    for k in kappas:
        curve = sample(family, k, 0.0, float(family.n), int(samples) + 1)
        reports.append(projected_crossings(curve))
    return reports

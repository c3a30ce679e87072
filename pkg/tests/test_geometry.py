import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.spatial import ConvexHull

from kappashape import KappaFamily, LandmarkSet, SampledCurve, Topology, sample
from kappashape.generators import trefoil_landmarks
from kappashape.geometry import (
    contains_2d,
    crossing_sweep,
    hull_2d,
    projected_crossings,
    weight_certificate_contains,
)

SQUARE = np.array([(0, 0), (2, 0), (2, 2), (0, 2)], float)


def closed_curve(points, t=None):
    pts = np.asarray(points, float)
    pts = np.vstack([pts, pts[:1]])
    t = np.arange(len(pts), dtype=float) if t is None else t
    return SampledCurve(t, pts, ("exact",) * len(pts), 0.0, Topology.CLOSED)


def test_hull_basics():
    hull = hull_2d(np.vstack([SQUARE, [(1, 1), (0.5, 1.5), (1, 0)]]))
    assert len(hull) == 4
    assert set(map(tuple, hull.vertices)) == set(map(tuple, SQUARE))
    assert hull.diameter == pytest.approx(np.sqrt(8))
    assert hull.signed_distance([(1, 1)])[0] == pytest.approx(-1.0)
    assert hull.signed_distance([(3, 1)])[0] == pytest.approx(1.0)
    assert contains_2d(hull, (2 + 1e-10, 1))
    assert not contains_2d(hull, (2 + 1e-8, 1))


def test_hull_degenerate():
    assert len(hull_2d([(1, 1), (1, 1)])) == 1
    line = hull_2d([(0, 0), (1, 1), (3, 3), (2, 2)])
    assert len(line) == 2
    assert line.signed_distance([(1, 0)])[0] == pytest.approx(np.sqrt(0.5))
    assert line.contains((1.5, 1.5))
    with pytest.raises(ValueError):
        hull_2d(np.zeros((0, 2)))
    with pytest.raises(ValueError):
        hull_2d(np.zeros((3, 3)))


@settings(max_examples=50, deadline=None)
@given(st.integers(3, 40), st.integers(0, 2 ** 31))
def test_hull_matches_scipy(n, seed):
    pts = np.random.default_rng(seed).random((n, 2))
    ours = hull_2d(pts)
    ref = ConvexHull(pts)
    assert set(map(tuple, ours.vertices)) == set(map(tuple, pts[ref.vertices]))
    # counterclockwise
    v = ours.vertices
    area = 0.5 * np.sum(v[:, 0] * np.roll(v[:, 1], -1) - np.roll(v[:, 0], -1) * v[:, 1])
    assert area == pytest.approx(ref.volume)


def test_family_stays_in_hull():
    lm = LandmarkSet(np.random.default_rng(3).random((12, 2)))
    hull = hull_2d(lm.points)
    for k in (0.01, 1.0, 50.0):
        assert hull.contains(sample(lm, k, count=500).points)


def test_weight_certificate():
    res = KappaFamily(trefoil_landmarks()).evaluate(2.3, 0.4)
    assert weight_certificate_contains(res)
    assert weight_certificate_contains([0.2, 0.8])
    assert not weight_certificate_contains([-0.1, 1.1])
    assert not weight_certificate_contains([0.5, 0.6])
    assert not weight_certificate_contains([np.nan, 1.0])
    assert not weight_certificate_contains([[0.5, 0.5], [0.7, 0.2]])


def test_figure_eight_has_one_crossing():
    t = np.linspace(0, 2 * np.pi, 401)
    xyz = np.column_stack([np.sin(t), np.sin(t) * np.cos(t), np.cos(t)])
    curve = SampledCurve(t, xyz, ("exact",) * len(t), 0.0, Topology.CLOSED)
    rep = projected_crossings(curve)
    assert rep.crossing_count == 1
    c = rep.crossings[0]
    assert c.point == pytest.approx((0.0, 0.0), abs=1e-9)
    # at t = 0 the curve is at z = 1, at t = pi at z = -1
    assert c.over_index == 0 and c.z_a > c.z_b
    # a single crossing always bounds an empty loop
    assert rep.reduced_count == 0


def test_planar_square_has_no_crossings():
    lm = LandmarkSet(np.column_stack([SQUARE, np.full(4, 0.3)]), "closed")
    for rep in crossing_sweep(KappaFamily(lm), [0.01, 0.3, 1.0], samples=400):
        assert rep.crossing_count == 0


def test_touching_vertex_is_not_a_crossing():
    # both passes through (1, 0) stay on their own side: directions do not interleave
    rep = projected_crossings(closed_curve([(0, 0, 0), (1, 0, 0), (2, 1, 0), (2, -1, 1), (1, 0, 1), (0, -1, 1)]))
    assert rep.crossing_count == 0 and not rep.degenerate


def test_pass_through_shared_vertex_counts_once():
    rep = projected_crossings(closed_curve([(0, 0, 0), (1, 0, 0), (2, 1, 0), (2, -1, 1), (1, 0, 1), (0, 1, 1)]))
    assert rep.crossing_count == 1
    c = rep.crossings[0]
    assert c.kind == "vertex" and c.point == pytest.approx((1.0, 0.0))
    assert c.over_index == 1


def test_near_tangent_pass_is_degenerate():
    e = 1e-5
    pts = [(-1, 0, 0), (0, 0, 0), (1, 0, 0), (1, 5, 0), (-1, 5, 0),
           (-1, e, 1), (0, 0, 1), (1, -e, 1), (1, -5, 1), (-1, -5, 1)]
    rep = projected_crossings(closed_curve(pts))
    assert rep.crossing_count == 0
    assert len(rep.degenerate) == 1 and rep.degenerate[0].angle < 1e-3


def test_equal_heights_are_degenerate():
    rep = projected_crossings(closed_curve([(0, 0, 0), (2, 2, 0), (2, 0, 0), (0, 2, 0)]))
    assert rep.crossing_count == 0 and len(rep.degenerate) == 1


def test_trefoil_crossings():
    fam = KappaFamily(trefoil_landmarks())
    small, mid = crossing_sweep(fam, [0.01, 0.3], samples=2000)
    assert small.crossing_count == 3 and mid.crossing_count == 3
    assert mid.reduced_count == 3
    # alternating over/under along the curve: a reduced alternating diagram is knotted
    passes = sorted([(c.t_a, c.over_index == 0) for c in mid.crossings] + [(c.t_b, c.over_index == 1) for c in mid.crossings])
    overs = [o for _, o in passes]
    assert all(a != b for a, b in zip(overs, overs[1:] + overs[:1]))
    d = mid.to_dict()
    assert d["crossing_count"] == 3 and len(d["crossings"]) == 3


def test_crossing_sweep_rejects_wrong_input():
    with pytest.raises(ValueError):
        crossing_sweep(KappaFamily(LandmarkSet(SQUARE, "closed")), [0.1])
    with pytest.raises(ValueError):
        crossing_sweep(KappaFamily(LandmarkSet(trefoil_landmarks().points)), [0.1])

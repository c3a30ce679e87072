import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from kappashape import (
    DomainError,
    KappaFamily,
    LandmarkSet,
    Quality,
    RecoveryError,
    Topology,
    centroid,
    eval_closed,
    eval_open,
    kernel_weights,
    recover_landmark,
    sample,
    transform,
)
from kappashape.generators import lemniscate_landmarks, logistic_landmarks, triangle_landmarks, waveform_landmarks

TRIANGLE = [(0.0, 0.0), (4.0, 3.0), (7.0, 1.0)]

landmark_sets = arrays(np.float64, st.tuples(st.integers(1, 12), st.integers(1, 3)),
                       elements=st.floats(-10, 10, allow_nan=False))
kappas = st.floats(1e-3, 1e3)


def test_open_point_matches_high_precision():
    # landmarks 0, 1, 3 at t=0.25, kappa=1, evaluated in 50-digit arithmetic
    res = eval_open(LandmarkSet([0.0, 1.0, 3.0]), 0.25, 1.0)
    assert res.point[0] == pytest.approx(0.61530358491470264, rel=1e-14)
    assert res.weights == pytest.approx([0.54554997329511917, 0.37402324759996993, 0.080426779104910904], rel=1e-13)
    assert res.quality is Quality.EXACT


def test_closed_point_matches_high_precision():
    res = eval_closed(LandmarkSet(TRIANGLE, "closed"), 0.7, 0.3)
    assert res.point == pytest.approx([3.1909178758723398, 2.2345752962645538], rel=1e-14)


def test_single_landmark():
    for topo in ("open", "closed"):
        res = KappaFamily(LandmarkSet([(2.0, -1.0)], topo)).evaluate(5.3, 0.7)
        assert np.array_equal(res.weights, [1.0])
        assert np.array_equal(res.point, [2.0, -1.0])
    assert np.array_equal(recover_landmark(LandmarkSet([(2.0, -1.0)]), 0), [2.0, -1.0])


def test_small_kappa_reproduces_landmarks():
    assert eval_open(LandmarkSet(TRIANGLE), 1, 0.01).point == pytest.approx([4, 3], abs=1e-6)
    assert eval_closed(lemniscate_landmarks("square4"), 0, 0.01).point == pytest.approx([-1, -1], abs=1e-6)
    assert eval_closed(waveform_landmarks(), 1, 0.01).point[0] == pytest.approx(4, abs=1e-6)
    assert recover_landmark(triangle_landmarks("open"), 2) == pytest.approx([7, 1], abs=1e-6)
    assert recover_landmark(triangle_landmarks("closed"), 2) == pytest.approx([7, 1], abs=1e-6)
    assert recover_landmark(waveform_landmarks(), 3)[0] == pytest.approx(2, abs=1e-6)


def test_recovery_reports_failure():
    with pytest.raises(RecoveryError):
        recover_landmark(LandmarkSet(TRIANGLE), 1, kappa=0.5)
    with pytest.raises(IndexError):
        recover_landmark(LandmarkSet(TRIANGLE), 3)


def test_logistic_samples_hit_landmarks():
    lm = logistic_landmarks(3.5, 0.3, 150)
    curve = sample(lm, 0.01, 0, 149, 1491)
    assert np.allclose(curve.points[::10, 0], lm.points[:, 0], atol=1e-6)


def test_centroid():
    assert centroid(waveform_landmarks()) == pytest.approx([2.0])
    assert centroid(lemniscate_landmarks("square4")) == pytest.approx([0.0, 0.0])
    for topo in ("open", "closed"):
        fam = KappaFamily(LandmarkSet(TRIANGLE, topo))
        assert np.allclose(fam(np.linspace(-3, 5, 17), 1e8), fam.centroid(), atol=1e-6)


def test_open_outside_domain_is_flagged():
    fam = KappaFamily(LandmarkSet(TRIANGLE))
    assert fam.evaluate(-0.5, 0.3).quality is Quality.OUTSIDE_CANONICAL_DOMAIN
    assert fam.evaluate(2.5, 0.3).quality is Quality.OUTSIDE_CANONICAL_DOMAIN
    assert fam.evaluate(2.0, 0.3).quality is Quality.EXACT


@pytest.mark.parametrize("t", [-300.0, 400.0])
def test_underflow_rebuilds_weights_from_logs(t):
    # at kappa=1e-3 every kernel value underflows this far outside [0, N-1]
    w, codes = kernel_weights(np.array([t]), 3, 1e-3)
    assert codes[0] == 2
    assert np.all(w >= 0) and w.sum() == pytest.approx(1.0, abs=1e-12)


def test_closed_denominator_never_underflows():
    # the nearest landmark is always inside its plateau, so one term is >= 1/2
    t = np.linspace(-2, 6, 8001)
    w, codes = kernel_weights(t, 4, 1e-5, closed=True)
    assert not np.any(codes)
    assert np.allclose(w.sum(axis=1), 1.0, atol=1e-12)


def test_underflow_point_is_sensible():
    fam = KappaFamily(LandmarkSet(TRIANGLE))
    res = fam.evaluate(-300.0, 1e-3)
    assert res.quality is Quality.DENOMINATOR_CLAMPED
    # far to the left the first landmark dominates
    assert res.point == pytest.approx([0.0, 0.0], abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(landmark_sets, kappas, st.floats(-5, 20), st.sampled_from(["open", "closed"]))
def test_weights_are_a_certificate(points, kappa, t, topo):
    fam = KappaFamily(LandmarkSet(points, topo))
    res = fam.evaluate(t, kappa)
    assert np.all(res.weights >= 0)
    assert abs(res.weights.sum() - 1.0) <= 1e-12
    assert np.allclose(res.point, res.weights @ points, atol=1e-12, rtol=0)


@settings(max_examples=40, deadline=None)
@given(landmark_sets, kappas, st.floats(-3, 3), st.integers(-3, 3))
def test_closed_periodicity(points, kappa, t, k):
    fam = KappaFamily(LandmarkSet(points, "closed"))
    scale = 1 + np.abs(points).max()
    assert np.allclose(fam(t + k * fam.n, kappa), fam(t, kappa), atol=1e-12 * scale, rtol=0)


@settings(max_examples=40, deadline=None)
@given(landmark_sets, kappas, st.floats(-3, 3), st.integers(0, 11))
def test_cyclic_shift(points, kappa, t, m):
    lm = LandmarkSet(points, "closed")
    m = m % lm.n
    shifted = KappaFamily(lm.rolled(m))
    scale = 1 + np.abs(points).max()
    assert np.allclose(shifted(t, kappa), KappaFamily(lm)(t + m, kappa), atol=1e-12 * scale, rtol=0)


def test_transform():
    fam = KappaFamily(LandmarkSet(TRIANGLE, "closed"))
    rot = np.array([[0.0, -1.0], [1.0, 0.0]])
    assert np.allclose(transform(fam, rot)(0.5, 0.3), rot @ fam(0.5, 0.3), atol=1e-9)
    t = np.linspace(0, 3, 31)
    assert np.array_equal(transform(fam, np.eye(2))(t, 0.4), fam(t, 0.4))
    assert np.allclose(transform(fam, 2 * np.eye(2)).centroid(), 2 * fam.centroid())
    proj = np.array([[1.0, 0.0]])
    assert transform(fam, proj).dim == 1
    with pytest.raises(DomainError):
        transform(fam, np.eye(3))


def test_sample_defaults_and_errors():
    open_curve = sample(LandmarkSet(TRIANGLE), 0.3)
    assert len(open_curve) == 31 and open_curve.t[0] == 0 and open_curve.t[-1] == 2
    closed_curve = sample(LandmarkSet(TRIANGLE, "closed"), 0.3, 0, 3, 4)
    assert np.allclose(closed_curve.points[0], closed_curve.points[-1], atol=1e-12, rtol=0)
    assert closed_curve.topology is Topology.CLOSED
    assert np.allclose(sample(LandmarkSet([0.0, 1.0]), 1e8).points, 0.5, atol=1e-6)
    with pytest.raises(ValueError):
        sample(LandmarkSet(TRIANGLE), 0.3, 2, 1)
    with pytest.raises(ValueError):
        sample(LandmarkSet(TRIANGLE), 0.3, count=1)
    with pytest.raises(DomainError):
        sample(LandmarkSet(TRIANGLE), -1.0)


def test_topology_mismatch():
    with pytest.raises(ValueError):
        eval_open(LandmarkSet(TRIANGLE, "closed"), 0.0, 1.0)
    with pytest.raises(ValueError):
        eval_closed(LandmarkSet(TRIANGLE), 0.0, 1.0)


def test_landmark_set_is_immutable_and_validated():
    lm = LandmarkSet(TRIANGLE)
    with pytest.raises(ValueError):
        lm.points[0, 0] = 1.0
    with pytest.raises(ValueError):
        LandmarkSet([])
    with pytest.raises(ValueError):
        LandmarkSet([(0.0, np.nan)])
    with pytest.raises(ValueError):
        LandmarkSet(TRIANGLE, "loop")
    with pytest.raises(ValueError):
        LandmarkSet(TRIANGLE, labels=("a",))
    assert LandmarkSet(TRIANGLE) == LandmarkSet(np.array(TRIANGLE))
    assert LandmarkSet(TRIANGLE) != LandmarkSet(TRIANGLE, "closed")


def test_duplicates_pull_toward_repeated_landmark():
    plain = KappaFamily(LandmarkSet([(0.0, 0.0), (4.0, 3.0), (7.0, 1.0)], "closed"))
    heavy = KappaFamily(LandmarkSet([(0.0, 0.0), (4.0, 3.0), (0.0, 0.0), (7.0, 1.0), (0.0, 0.0)], "closed"))
    assert np.linalg.norm(heavy.centroid()) < np.linalg.norm(plain.centroid())


def test_vectorized_matches_scalar():
    fam = KappaFamily(LandmarkSet(TRIANGLE))
    t = np.array([[0.1, 0.7], [1.3, 1.9]])
    pts = fam(t, 0.2)
    assert pts.shape == (2, 2, 2)
    assert np.allclose(pts[1, 0], fam.evaluate(1.3, 0.2).point, atol=1e-15)

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pointmatch import RigidTransform, SimilarityThresholds, transform_similarity
from pointmatch.geometry import TWO_PI
from pointmatch.similarity import DEFAULT_THRESHOLDS, similarity_from_differences

TH = SimilarityThresholds(alpha=10.0, beta=10.0, delta=math.pi / 6)

translations = st.floats(min_value=-100.0, max_value=100.0, allow_nan=False, allow_infinity=False)
angles = st.floats(min_value=0.0, max_value=TWO_PI, allow_nan=False, allow_infinity=False,
                   exclude_max=True)


def transforms(draw):
    return RigidTransform(draw(angles), draw(translations), draw(translations))


def test_identical_transforms_score_one():
    t = RigidTransform(1.0, 2.0, 3.0)
    assert transform_similarity(t, t, TH) == 1.0


def test_zero_outside_x_threshold():
    t1 = RigidTransform(0.0, 0.0, 0.0)
    t2 = RigidTransform(0.0, 15.0, 0.0)
    assert transform_similarity(t1, t2, TH) == 0.0


def test_zero_outside_y_and_angle_thresholds():
    base = RigidTransform(0.0, 0.0, 0.0)
    assert transform_similarity(base, RigidTransform(0.0, 0.0, 10.5), TH) == 0.0
    assert transform_similarity(base, RigidTransform(math.pi / 6 + 0.01, 0.0, 0.0), TH) == 0.0


def test_linear_falloff_hand_value():
    t1 = RigidTransform(0.0, 0.0, 0.0)
    t2 = RigidTransform(0.0, 5.0, 0.0)
    assert transform_similarity(t1, t2, TH) == pytest.approx(1.0 - (0.5 / 3.0), abs=1e-12)


def test_boundary_equality_is_inside_the_box():
    t1 = RigidTransform(0.0, 0.0, 0.0)
    t2 = RigidTransform(0.0, 10.0, 0.0)
    assert transform_similarity(t1, t2, TH) == pytest.approx(2.0 / 3.0, abs=1e-12)
    # all three differences exactly at threshold: smooth branch, value 0
    t3 = RigidTransform(math.pi / 6, 10.0, 10.0)
    assert transform_similarity(t1, t3, TH) == pytest.approx(0.0, abs=1e-12)


def test_wrap_aware_angle_difference():
    t1 = RigidTransform(0.01, 0.0, 0.0)
    t2 = RigidTransform(TWO_PI - 0.01, 0.0, 0.0)
    s = transform_similarity(t1, t2, TH)
    assert s == pytest.approx(1.0 - (0.02 / (math.pi / 6)) / 3.0)


@given(angles, translations, translations, angles, translations, translations)
@settings(max_examples=200)
def test_symmetry_and_range(th1, x1, y1, th2, x2, y2):
    t1 = RigidTransform(th1, x1, y1)
    t2 = RigidTransform(th2, x2, y2)
    s12 = transform_similarity(t1, t2, TH)
    s21 = transform_similarity(t2, t1, TH)
    assert s12 == s21
    assert 0.0 <= s12 <= 1.0


def test_one_exactly_at_identity():
    t = RigidTransform(2.0, -3.0, 4.5)
    assert transform_similarity(t, t, TH) == 1.0


@given(angles, translations, translations, angles, translations, translations)
@settings(max_examples=200)
def test_one_only_when_differences_negligible(th1, x1, y1, th2, x2, y2):
    # 1 - x rounds to 1.0 only when x is below floating-point resolution
    t1 = RigidTransform(th1, x1, y1)
    t2 = RigidTransform(th2, x2, y2)
    if transform_similarity(t1, t2, TH) == 1.0:
        from pointmatch import angular_distance

        assert abs(t1.tx - t2.tx) / TH.alpha < 1e-15
        assert abs(t1.ty - t2.ty) / TH.beta < 1e-15
        assert angular_distance(t1.theta, t2.theta) / TH.delta < 1e-15


def test_vectorized_matches_scalar_bitwise():
    rng = np.random.default_rng(5)
    n = 500
    t1s = [RigidTransform(rng.uniform(0, TWO_PI), rng.uniform(-30, 30), rng.uniform(-30, 30))
           for _ in range(n)]
    t2s = [RigidTransform(rng.uniform(0, TWO_PI), rng.uniform(-30, 30), rng.uniform(-30, 30))
           for _ in range(n)]
    from pointmatch.geometry import angular_distances

    dtx = np.array([abs(a.tx - b.tx) for a, b in zip(t1s, t2s)])
    dty = np.array([abs(a.ty - b.ty) for a, b in zip(t1s, t2s)])
    dth = angular_distances([a.theta for a in t1s], [b.theta for b in t2s])
    vec = similarity_from_differences(dtx, dty, dth, TH)
    scalar = np.array([transform_similarity(a, b, TH) for a, b in zip(t1s, t2s)])
    assert np.array_equal(vec, scalar)


def test_threshold_validation():
    with pytest.raises(ValueError):
        SimilarityThresholds(alpha=0.0)
    with pytest.raises(ValueError):
        SimilarityThresholds(beta=-1.0)
    with pytest.raises(ValueError):
        SimilarityThresholds(delta=math.pi + 0.1)
    with pytest.raises(ValueError):
        SimilarityThresholds(delta=math.nan)


def test_default_thresholds():
    assert DEFAULT_THRESHOLDS.alpha == 10.0
    assert DEFAULT_THRESHOLDS.beta == 10.0
    assert DEFAULT_THRESHOLDS.delta == pytest.approx(math.pi / 6)

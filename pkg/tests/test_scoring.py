import math

import numpy as np
import pytest

from pointmatch import (
    DegenerateInputError,
    IterationConfig,
    PointSet,
    RigidTransform,
    SimilarityThresholds,
    SynthConfig,
    build_neighbor_table,
    generate_scene,
    init_scores,
    iterate_scores,
    normalize_scores,
    precompute_transforms,
    transform_point_set,
    transform_similarity,
    update_scores,
)

TH = SimilarityThresholds()


def set_of(rows):
    return PointSet.from_array(rows)


class TestPrecomputeTransforms:
    def test_single_pair(self):
        table = precompute_transforms(set_of([[0, 0, 0]]), set_of([[3, 4, 0]]))
        assert table.shape == (1, 1)
        t = table[0, 0]
        assert (t.theta, t.tx, t.ty) == (0.0, 3.0, 4.0)

    def test_identical_sets_have_identity_diagonal(self):
        rng = np.random.default_rng(0)
        s = set_of(np.column_stack([rng.uniform(0, 10, (6, 2)), rng.uniform(0, 6, 6)]))
        table = precompute_transforms(s, s)
        for i in range(6):
            t = table[i, i]
            assert t.theta == 0.0
            assert t.tx == pytest.approx(0.0, abs=1e-12)
            assert t.ty == pytest.approx(0.0, abs=1e-12)

    def test_round_trip_property(self):
        from pointmatch import angular_distance, apply_transform

        rng = np.random.default_rng(1)
        a = set_of(np.column_stack([rng.uniform(-5, 5, (2, 2)), rng.uniform(0, 6, 2)]))
        b = set_of(np.column_stack([rng.uniform(-5, 5, (3, 2)), rng.uniform(0, 6, 3)]))
        table = precompute_transforms(a, b)
        assert table.shape == (2, 3)
        for i in range(2):
            for j in range(3):
                image = apply_transform(table[i, j], a[i])
                assert image.x == pytest.approx(b[j].x, abs=1e-9)
                assert image.y == pytest.approx(b[j].y, abs=1e-9)
                assert angular_distance(image.theta, b[j].theta) < 1e-9

    def test_empty_set_errors(self):
        with pytest.raises(DegenerateInputError):
            precompute_transforms(PointSet(), set_of([[0, 0, 0]]))


class TestInitScores:
    def test_all_ones(self):
        w = init_scores(2, 3)
        assert w.shape == (2, 3)
        assert np.all(w == 1.0)
        assert np.array_equal(init_scores(1, 1), [[1.0]])

    def test_validation(self):
        with pytest.raises(ValueError):
            init_scores(0, 3)


# 2-point scene translated by (3, 4); points 50 apart so wrong-pair
# hypotheses disagree by 100 in tx and contribute nothing.
A2 = set_of([[0, 0, 0], [50, 0, 0]])
B2 = set_of([[3, 4, 0], [53, 4, 0]])


class TestUpdateScores:
    def test_hand_computed_two_point_scene(self):
        tt = precompute_transforms(A2, B2)
        na = build_neighbor_table(A2, 1)
        nb = build_neighbor_table(B2, 1)
        w = init_scores(2, 2)
        out = update_scores(w, tt, na, nb, TH)
        assert np.array_equal(out, [[2.0, 1.0], [1.0, 2.0]])

    def test_no_agreement_leaves_input_unchanged(self):
        # same locations but opposite orientations: hypotheses differ by pi
        a = set_of([[0, 0, 0], [5, 0, 0]])
        b = set_of([[0, 0, 0], [5, 0, math.pi]])
        tt = precompute_transforms(a, b)
        na = build_neighbor_table(a, 1)
        nb = build_neighbor_table(b, 1)
        w = np.array([[0.3, 0.7], [0.1, 0.9]])
        out = update_scores(w, tt, na, nb, SimilarityThresholds(delta=0.1))
        assert np.array_equal(out, w)

    def test_monotone_growth(self):
        for seed in range(5):
            a, b, _ = generate_scene(SynthConfig(n=15, outlier_ratio=0.3, jitter_ratio=0.1, seed=seed))
            tt = precompute_transforms(a, b)
            na = build_neighbor_table(a, 4)
            nb = build_neighbor_table(b, 4)
            w = np.random.default_rng(seed).uniform(0, 1, (15, 15))
            out = update_scores(w, tt, na, nb, TH)
            assert np.all(out >= w)

    def test_pure_function_of_inputs(self):
        a, b, _ = generate_scene(SynthConfig(n=10, seed=3))
        tt = precompute_transforms(a, b)
        na = build_neighbor_table(a, 3)
        nb = build_neighbor_table(b, 3)
        w = np.full((10, 10), 0.5)
        w_copy = w.copy()
        out1 = update_scores(w, tt, na, nb, TH)
        out2 = update_scores(w, tt, na, nb, TH)
        assert np.array_equal(out1, out2)
        assert np.array_equal(w, w_copy)

    def test_matches_literal_formula(self):
        rng = np.random.default_rng(11)
        a, b, _ = generate_scene(SynthConfig(n=7, outlier_ratio=0.2, jitter_ratio=0.05, seed=21))
        tt = precompute_transforms(a, b)
        na = build_neighbor_table(a, 2)
        nb = build_neighbor_table(b, 2)
        w = rng.uniform(0, 1, (7, 7))
        out = update_scores(w, tt, na, nb, TH)
        expected = np.empty_like(w)
        for i in range(7):
            for j in range(7):
                acc = 0.0
                for k in na[i]:
                    for l in nb[j]:
                        acc += w[k, l] * transform_similarity(tt[i, j], tt[k, l], TH)
                expected[i, j] = w[i, j] + acc
        assert np.max(np.abs(out - expected)) < 1e-12

    def test_shape_mismatch_errors(self):
        tt = precompute_transforms(A2, B2)
        na = build_neighbor_table(A2, 1)
        nb = build_neighbor_table(B2, 1)
        with pytest.raises(ValueError):
            update_scores(np.ones((3, 2)), tt, na, nb, TH)
        with pytest.raises(ValueError):
            update_scores(np.ones((2, 2)), tt, na[:1], nb, TH)


class TestNormalizeScores:
    def test_min_max_example(self):
        out = normalize_scores(np.array([[0.0, 5.0], [10.0, 5.0]]))
        assert np.array_equal(out, [[0.0, 0.5], [1.0, 0.5]])

    def test_constant_matrix_maps_to_ones(self):
        assert np.array_equal(normalize_scores(np.full((2, 2), 7.0)), np.ones((2, 2)))

    def test_zero_matrix_stays_zero(self):
        assert np.array_equal(normalize_scores(np.zeros((2, 3))), np.zeros((2, 3)))

    def test_idempotent_on_normalized_input(self):
        w = np.array([[0.0, 0.25], [1.0, 0.5]])
        assert np.array_equal(normalize_scores(w), w)

    def test_output_range(self):
        rng = np.random.default_rng(6)
        w = rng.uniform(0, 100, (8, 5))
        out = normalize_scores(w)
        assert out.min() == 0.0
        assert out.max() == 1.0


class TestIterateScores:
    def test_single_point_sets(self):
        s = set_of([[1, 2, 0.5]])
        w, n_iter = iterate_scores(s, s, 3)
        assert np.array_equal(w, [[1.0]])
        assert n_iter >= 1

    def test_one_iteration_contract(self):
        a, b, _ = generate_scene(SynthConfig(n=8, seed=5))
        tt = precompute_transforms(a, b)
        na = build_neighbor_table(a, 3)
        nb = build_neighbor_table(b, 3)
        manual = normalize_scores(update_scores(init_scores(8, 8), tt, na, nb, TH))
        w, n_iter = iterate_scores(a, b, 3, TH, IterationConfig(max_iterations=1))
        assert n_iter == 1
        assert np.array_equal(w, manual)

    def test_matches_manual_chain(self):
        a, b, _ = generate_scene(SynthConfig(n=9, outlier_ratio=0.2, seed=8))
        tt = precompute_transforms(a, b)
        na = build_neighbor_table(a, 3)
        nb = build_neighbor_table(b, 3)
        w = init_scores(9, 9)
        for _ in range(3):
            w = normalize_scores(update_scores(w, tt, na, nb, TH))
        got, n_iter = iterate_scores(a, b, 3, TH, IterationConfig(max_iterations=3, convergence_tol=0.0))
        assert n_iter == 3
        assert np.array_equal(got, w)

    def test_zero_tol_runs_all_iterations(self):
        a, b, _ = generate_scene(SynthConfig(n=6, seed=9))
        _, n_iter = iterate_scores(a, b, 2, TH, IterationConfig(max_iterations=4, convergence_tol=0.0))
        assert n_iter == 4

    def test_clean_scene_truth_dominates(self):
        rng = np.random.default_rng(10)
        a = set_of(np.column_stack([rng.uniform(0, 100, (5, 2)), rng.uniform(0, 6, 5)]))
        b = transform_point_set(RigidTransform(math.pi / 4, 7.0, -3.0), a)
        w, _ = iterate_scores(a, b, 2)
        assert w.max() == 1.0
        for i in range(5):
            assert np.argmax(w[i]) == i
            assert w[i, i] >= 0.99

    def test_translating_b_leaves_scores_unchanged(self):
        a, b, _ = generate_scene(SynthConfig(n=20, outlier_ratio=0.2, jitter_ratio=0.04, seed=12))
        shifted = PointSet.from_array(b.as_array() + np.array([37.0, -11.0, 0.0]))
        w1, _ = iterate_scores(a, b, 5)
        w2, _ = iterate_scores(a, shifted, 5)
        assert np.max(np.abs(w1 - w2)) < 1e-9

    def test_on_iteration_callback(self):
        a, b, _ = generate_scene(SynthConfig(n=6, seed=13))
        seen = []
        iterate_scores(a, b, 2, TH, IterationConfig(max_iterations=3, convergence_tol=0.0),
                       on_iteration=lambda t, w: seen.append((t, w.min(), w.max())))
        assert [t for t, _, _ in seen] == [1, 2, 3]
        for _, lo, hi in seen:
            assert lo >= 0.0 and hi <= 1.0

    def test_iteration_config_validation(self):
        with pytest.raises(ValueError):
            IterationConfig(max_iterations=0)
        with pytest.raises(ValueError):
            IterationConfig(convergence_tol=-1.0)

"""Seeded synthetic scenes with known ground truth.

A scene starts from ``n`` points drawn uniformly in an ``L x L`` box
with uniform orientations. The second set is a rigid copy, degraded in
three stages: a chosen fraction of pairs has both endpoints replaced by
fresh uniform noise, surviving copies get per-coordinate jitter drawn
uniformly from ``[-jL/2, +jL/2]`` (so the jitter range is the fraction
``j`` of the scene range), and the copy's order is shuffled. All
randomness comes from one seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .geometry import TWO_PI, PointSet, RigidTransform, transform_point_set


@dataclass(frozen=True)
class SynthConfig:
    """Scene parameters. ``transform=None`` plants a random transform."""

    n: int
    scene_range: float = 100.0
    outlier_ratio: float = 0.0
    jitter_ratio: float = 0.0
    transform: Optional[RigidTransform] = None
    seed: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"n must be at least 2, got {self.n}")
        if not (math.isfinite(self.scene_range) and self.scene_range > 0):
            raise ValueError(f"scene_range must be positive, got {self.scene_range!r}")
        for name in ("outlier_ratio", "jitter_ratio"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v!r}")


@dataclass(frozen=True)
class GroundTruth:
    """What the generator knows about a scene.

    ``permutation[i]`` is the index in the emitted B of the point that
    originated from pair ``i``; ``true_pairs`` lists the (i, j) index
    pairs that survived outlier replacement, with j already mapped
    through the permutation.
    """

    true_pairs: list[tuple[int, int]]
    outlier_indices_a: np.ndarray
    outlier_indices_b: np.ndarray
    planted_transform: RigidTransform
    permutation: np.ndarray


def generate_scene(config: SynthConfig) -> tuple[PointSet, PointSet, GroundTruth]:
    """Generate one scene; identical configs give identical scenes."""
    rng = np.random.default_rng(config.seed)
    n = config.n
    L = config.scene_range

    a = np.empty((n, 3))
    a[:, :2] = rng.uniform(0.0, L, size=(n, 2))
    a[:, 2] = rng.uniform(0.0, TWO_PI, size=n)

    if config.transform is not None:
        planted = config.transform
    else:
        planted = RigidTransform(
            rng.uniform(0.0, TWO_PI),
            rng.uniform(-L / 2, L / 2),
            rng.uniform(-L / 2, L / 2),
        )

    b = transform_point_set(planted, PointSet.from_array(a)).as_array().copy()

    n_outliers = int(math.floor(config.outlier_ratio * n))
    outlier_idx = np.sort(rng.choice(n, size=n_outliers, replace=False))
    if n_outliers:
        # both endpoints of a discarded pair become independent noise
        a[outlier_idx, :2] = rng.uniform(0.0, L, size=(n_outliers, 2))
        a[outlier_idx, 2] = rng.uniform(0.0, TWO_PI, size=n_outliers)
        b[outlier_idx, :2] = rng.uniform(0.0, L, size=(n_outliers, 2))
        b[outlier_idx, 2] = rng.uniform(0.0, TWO_PI, size=n_outliers)

    survivors = np.setdiff1d(np.arange(n), outlier_idx)
    if config.jitter_ratio > 0 and survivors.size:
        half = config.jitter_ratio * L / 2
        b[survivors, :2] += rng.uniform(-half, half, size=(survivors.size, 2))

    order = rng.permutation(n)  # emitted B[k] comes from pair order[k]
    position = np.empty(n, dtype=int)
    position[order] = np.arange(n)
    b_final = b[order]

    true_pairs = [(int(i), int(position[i])) for i in survivors]
    truth = GroundTruth(
        true_pairs=true_pairs,
        outlier_indices_a=outlier_idx,
        outlier_indices_b=position[outlier_idx],
        planted_transform=planted,
        permutation=position,
    )
    return PointSet.from_array(a), PointSet.from_array(b_final), truth

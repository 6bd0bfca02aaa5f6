"""Agreement score between two rigid-transform hypotheses.

Two transforms agree (score in (0, 1]) only when their translation
differences fit inside an ``alpha x beta`` box and their rotation
difference is within ``delta``; inside the box the score falls off
linearly in each normalized difference. Outside, the score is 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import RigidTransform, angular_distance


@dataclass(frozen=True)
class SimilarityThresholds:
    """Cutoffs for translation (scene units) and rotation (radians)."""

    alpha: float = 10.0
    beta: float = 10.0
    delta: float = math.pi / 6

    def __post_init__(self):
        for name in ("alpha", "beta", "delta"):
            v = float(getattr(self, name))
            if not math.isfinite(v) or v <= 0:
                raise ValueError(f"{name} must be a positive finite number, got {v!r}")
            object.__setattr__(self, name, v)
        if self.delta > math.pi:
            raise ValueError(f"delta must be at most pi, got {self.delta!r}")


DEFAULT_THRESHOLDS = SimilarityThresholds()


def transform_similarity(
    t1: RigidTransform,
    t2: RigidTransform,
    thresholds: SimilarityThresholds = DEFAULT_THRESHOLDS,
) -> float:
    """Score the agreement of two transforms, in [0, 1].

    Returns 0 when any difference strictly exceeds its threshold;
    equality to a threshold still counts as inside the box.
    """
    dtx = abs(t1.tx - t2.tx)
    dty = abs(t1.ty - t2.ty)
    dtheta = angular_distance(t1.theta, t2.theta)
    th = thresholds
    if dtx > th.alpha or dty > th.beta or dtheta > th.delta:
        return 0.0
    return 1.0 - (dtx / th.alpha + dty / th.beta + dtheta / th.delta) / 3.0


def similarity_from_differences(
    dtx: np.ndarray,
    dty: np.ndarray,
    dtheta: np.ndarray,
    thresholds: SimilarityThresholds = DEFAULT_THRESHOLDS,
) -> np.ndarray:
    """Vectorized similarity from absolute differences.

    ``dtheta`` must already be the wrap-aware angular distance in
    [0, pi]. Elementwise identical to :func:`transform_similarity`.
    """
    th = thresholds
    inside = (dtx <= th.alpha) & (dty <= th.beta) & (dtheta <= th.delta)
    value = 1.0 - (dtx / th.alpha + dty / th.beta + dtheta / th.delta) / 3.0
    return np.where(inside, value, 0.0)

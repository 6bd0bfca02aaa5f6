"""End-to-end matching pipeline and its scikit-learn style estimator.

The pipeline scores every candidate pairing by iterated neighbor
voting, extracts a maximum-score assignment, optionally filters weak
pairs, and fits one global rigid transform to the accepted pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .assignment import Matching, filter_matches, kuhn_munkres_max
from .errors import DegenerateInputError, NoCorrespondencesError
from .geometry import (
    PointSet,
    RigidTransform,
    compute_transform,
    transform_point_set,
    wrap_angle,
)
from .scoring import IterationConfig, iterate_scores
from .similarity import DEFAULT_THRESHOLDS, SimilarityThresholds
from .validation import check_directed_points


@dataclass(frozen=True)
class MatchConfig:
    """Parameters of the full matching pipeline."""

    k: int = 12
    thresholds: SimilarityThresholds = DEFAULT_THRESHOLDS
    iteration: IterationConfig = field(default_factory=IterationConfig)
    tau: Optional[float] = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be at least 1, got {self.k}")
        if self.tau is not None and not 0.0 <= self.tau <= 1.0:
            raise ValueError(f"tau must lie in [0, 1], got {self.tau!r}")


@dataclass(frozen=True)
class MatchResult:
    """Accepted pairs, their scores, and the fitted global transform."""

    pairs: Matching
    scores: np.ndarray
    global_transform: RigidTransform
    iterations_run: int


def estimate_global_transform(a: PointSet, b: PointSet, pairs: Matching) -> RigidTransform:
    """Least-squares rigid fit of B's matched locations onto A's.

    Minimizes the summed squared location residuals over the pairs
    (orientations are ignored); with a single pair it falls back to the
    exact per-pair transform, which does use orientation.
    """
    if len(pairs) == 0:
        raise NoCorrespondencesError("cannot estimate a transform from zero pairs")
    if len(pairs) == 1:
        i, j = pairs[0]
        return compute_transform(a[i], b[j])
    idx = np.asarray(pairs, dtype=int)
    pa = a.xy[idx[:, 0]]
    pb = b.xy[idx[:, 1]]
    ca = pa.mean(axis=0)
    cb = pb.mean(axis=0)
    xa = pa - ca
    xb = pb - cb
    dot = float(np.sum(xa * xb))
    cross = float(np.sum(xa[:, 0] * xb[:, 1] - xa[:, 1] * xb[:, 0]))
    theta = wrap_angle(math.atan2(cross, dot))
    c, s = math.cos(theta), math.sin(theta)
    tx = cb[0] - (c * ca[0] - s * ca[1])
    ty = cb[1] - (s * ca[0] + c * ca[1])
    return RigidTransform(theta, tx, ty)


def match_point_sets(
    a: PointSet,
    b: PointSet,
    config: MatchConfig = MatchConfig(),
    on_iteration: Optional[Callable[[int, np.ndarray], None]] = None,
) -> MatchResult:
    """Match two directed point sets.

    Deterministic for fixed inputs and config. Both sets need at least
    two points (neighbor voting is undefined on singletons).
    """
    if len(a) < 2 or len(b) < 2:
        raise DegenerateInputError(
            f"matching needs at least 2 points per set, got {len(a)} and {len(b)}"
        )
    scores, n_iter = iterate_scores(
        a, b, config.k, config.thresholds, config.iteration, on_iteration
    )
    pairs = kuhn_munkres_max(scores)
    pairs = filter_matches(pairs, scores, config.tau)
    transform = estimate_global_transform(a, b, pairs)
    pair_scores = np.array([scores[i, j] for i, j in pairs])
    return MatchResult(pairs, pair_scores, transform, n_iter)


class PointSetMatcher(BaseEstimator):
    """Match two directed point sets and recover their rigid alignment.

    Fitting scores every candidate pairing of a source point with a
    target point by how consistently the neighborhoods of the two points
    vote for the same rigid transform, then extracts the maximum-score
    assignment and fits one global rotation + translation to it.

    Parameters
    ----------
    k : int, default=12
        Neighborhood size used for consistency voting. Values above
        ``n - 1`` are clamped.
    alpha, beta : float, default=10.0
        Agreement thresholds for the x and y translation components, in
        scene units.
    delta : float, default=pi/6
        Agreement threshold for the rotation component, in radians.
    max_iterations : int, default=10
        Cap on score-update iterations.
    convergence_tol : float, default=1e-4
        Early stop once consecutive normalized score matrices differ by
        less than this, entrywise.
    score_threshold : float or None, default=None
        If set, matched pairs scoring below it are dropped; None keeps
        every assigned pair.

    Attributes
    ----------
    pairs_ : ndarray of shape (n_pairs, 2)
        Accepted (source index, target index) correspondences.
    pair_scores_ : ndarray of shape (n_pairs,)
        Normalized score of each accepted pair, in [0, 1].
    transform_ : RigidTransform
        Global rigid transform mapping the source set onto the target.
    n_iter_ : int
        Number of score updates actually run.

    Examples
    --------
    >>> import numpy as np
    >>> from pointmatch import PointSetMatcher
    >>> rng = np.random.default_rng(0)
    >>> X = np.column_stack([rng.uniform(0, 100, (20, 2)),
    ...                      rng.uniform(0, 2 * np.pi, 20)])
    >>> Y = X + np.array([5.0, -2.0, 0.0])
    >>> matcher = PointSetMatcher(k=4).fit(X, Y)
    >>> bool(np.all(matcher.pairs_[:, 0] == matcher.pairs_[:, 1]))
    True
    """

    def __init__(
        self,
        k: int = 12,
        alpha: float = 10.0,
        beta: float = 10.0,
        delta: float = math.pi / 6,
        max_iterations: int = 10,
        convergence_tol: float = 1e-4,
        score_threshold: Optional[float] = None,
    ):
        self.k = k
        self.alpha = alpha
        self.beta = beta
        self.delta = delta
        self.max_iterations = max_iterations
        self.convergence_tol = convergence_tol
        self.score_threshold = score_threshold

    def _config(self) -> MatchConfig:
        return MatchConfig(
            k=self.k,
            thresholds=SimilarityThresholds(self.alpha, self.beta, self.delta),
            iteration=IterationConfig(self.max_iterations, self.convergence_tol),
            tau=self.score_threshold,
        )

    def fit(self, X, Y):
        """Match source points ``X`` against target points ``Y``.

        Both inputs are (n, 3) arrays of ``x, y, theta`` rows (or
        :class:`~pointmatch.PointSet` instances) with at least 2 points.
        """
        a = check_directed_points(X, name="X", min_points=2)
        b = check_directed_points(Y, name="Y", min_points=2)
        result = match_point_sets(a, b, self._config())
        self.pairs_ = np.asarray(result.pairs, dtype=int).reshape(-1, 2)
        self.pair_scores_ = result.scores
        self.transform_ = result.global_transform
        self.n_iter_ = result.iterations_run
        return self

    def transform(self, X) -> np.ndarray:
        """Apply the fitted global transform to directed points."""
        check_is_fitted(self, "transform_")
        points = check_directed_points(X, name="X")
        return transform_point_set(self.transform_, points).as_array().copy()

    def fit_transform(self, X, Y) -> np.ndarray:
        """Fit on ``(X, Y)``, then map ``X`` into the target frame."""
        return self.fit(X, Y).transform(X)

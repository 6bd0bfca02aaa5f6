"""Iterated matching-score matrix.

Every candidate pairing (i, j) of a point in A with a point in B has a
transform hypothesis; a pairing is credible when the hypotheses of
neighboring pairings agree with it. Each update adds, for every entry
(i, j), the similarity-weighted scores of all neighbor-pair combinations
(k, l) with k a neighbor of i in A and l a neighbor of j in B. The
matrix is min-max normalized after every update.

Updates are synchronous: an update reads only the input matrix, never
partially written output, so results are independent of evaluation
order and safe to parallelize per entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional

import numpy as np

from .errors import DegenerateInputError
from .geometry import PointSet, RigidTransform, angular_distances, wrap_angles
from .neighbors import NeighborTable, build_neighbor_table
from .similarity import DEFAULT_THRESHOLDS, SimilarityThresholds, similarity_from_differences

# An (m, n) float array of nonnegative matching scores.
ScoreMatrix = np.ndarray

# Elements per gathered block; bounds transient memory of one update chunk.
_BLOCK_ELEMENT_BUDGET = 1 << 21
# Cache similarity blocks across iterations below this total size
# (they depend only on the transform tables, not on the scores).
_CACHE_ELEMENT_LIMIT = 1 << 24


@dataclass(frozen=True)
class TransformTable:
    """Per-pair transform hypotheses as three (m, n) parameter arrays."""

    theta: np.ndarray
    tx: np.ndarray
    ty: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return self.theta.shape

    def __getitem__(self, ij) -> RigidTransform:
        i, j = ij
        return RigidTransform(self.theta[i, j], self.tx[i, j], self.ty[i, j])


@dataclass(frozen=True)
class IterationConfig:
    """Stopping rule for the score iteration."""

    max_iterations: int = 10
    convergence_tol: float = 1e-4

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be at least 1, got {self.max_iterations}")
        if self.convergence_tol < 0:
            raise ValueError(f"convergence_tol must be nonnegative, got {self.convergence_tol}")


def precompute_transforms(a: PointSet, b: PointSet) -> TransformTable:
    """Compute the transform hypothesis for every pair (i, j)."""
    if len(a) == 0 or len(b) == 0:
        raise DegenerateInputError("transform table needs nonempty point sets")
    theta = wrap_angles(b.theta[None, :] - a.theta[:, None])
    c, s = np.cos(theta), np.sin(theta)
    ax = a.xy[:, 0][:, None]
    ay = a.xy[:, 1][:, None]
    tx = b.xy[:, 0][None, :] - (ax * c - ay * s)
    ty = b.xy[:, 1][None, :] - (ax * s + ay * c)
    for arr in (theta, tx, ty):
        arr.setflags(write=False)
    return TransformTable(theta, tx, ty)


def init_scores(m: int, n: int) -> ScoreMatrix:
    """Uniform all-ones starting matrix."""
    if m < 1 or n < 1:
        raise ValueError(f"score matrix dimensions must be positive, got {m}x{n}")
    return np.ones((m, n))


def _neighbor_blocks(
    transforms: TransformTable,
    neighbors_a: NeighborTable,
    neighbors_b: NeighborTable,
    thresholds: SimilarityThresholds,
) -> Iterator[tuple[int, int, np.ndarray, np.ndarray]]:
    """Yield (lo, hi, sim, flat) chunks over rows of A.

    ``sim[c, j, p, q]`` is the similarity between the hypothesis of pair
    (lo + c, j) and that of its neighbor combination (k, l) with
    k = neighbors_a[lo + c, p], l = neighbors_b[j, q]; ``flat`` holds the
    same (k, l) as flat indices into a raveled (m, n) matrix.
    """
    m, n = transforms.shape
    ka = neighbors_a.shape[1]
    kb = neighbors_b.shape[1]
    per_row = max(1, n * ka * kb)
    chunk = max(1, _BLOCK_ELEMENT_BUDGET // per_row)
    index_dtype = np.int32 if m * n < 2**31 else np.intp
    tx_flat = transforms.tx.ravel()
    ty_flat = transforms.ty.ravel()
    theta_flat = transforms.theta.ravel()
    ll = neighbors_b[None, :, None, :]
    for lo in range(0, m, chunk):
        hi = min(m, lo + chunk)
        kk = neighbors_a[lo:hi][:, None, :, None]
        flat = kk * n + ll
        dtx = np.abs(transforms.tx[lo:hi][:, :, None, None] - tx_flat[flat])
        dty = np.abs(transforms.ty[lo:hi][:, :, None, None] - ty_flat[flat])
        dtheta = angular_distances(
            transforms.theta[lo:hi][:, :, None, None], theta_flat[flat]
        )
        sim = similarity_from_differences(dtx, dty, dtheta, thresholds)
        yield lo, hi, sim, flat.astype(index_dtype)


def _apply_blocks(w: ScoreMatrix, blocks: Iterable[tuple[int, int, np.ndarray, np.ndarray]]) -> ScoreMatrix:
    out = np.empty_like(w)
    w_flat = w.ravel()
    for lo, hi, sim, flat in blocks:
        out[lo:hi] = w[lo:hi] + np.einsum("cjpq,cjpq->cj", sim, w_flat[flat])
    return out


def _check_scores(w, shape: tuple[int, int]) -> ScoreMatrix:
    w = np.ascontiguousarray(np.asarray(w, dtype=float))
    if w.ndim != 2:
        raise ValueError(f"score matrix must be 2-D, got ndim={w.ndim}")
    if w.shape != shape:
        raise ValueError(f"score matrix shape {w.shape} does not match transform table {shape}")
    if not np.all(np.isfinite(w)):
        raise ValueError("score matrix entries must be finite")
    return w


def update_scores(
    w: ScoreMatrix,
    transforms: TransformTable,
    neighbors_a: NeighborTable,
    neighbors_b: NeighborTable,
    thresholds: SimilarityThresholds = DEFAULT_THRESHOLDS,
) -> ScoreMatrix:
    """One synchronous voting update; never decreases an entry.

    Returns a new matrix; the input is left untouched and all reads come
    from it (pure function of its arguments).
    """
    m, n = transforms.shape
    w = _check_scores(w, (m, n))
    if neighbors_a.shape[0] != m:
        raise ValueError(f"neighbor table for A has {neighbors_a.shape[0]} rows, expected {m}")
    if neighbors_b.shape[0] != n:
        raise ValueError(f"neighbor table for B has {neighbors_b.shape[0]} rows, expected {n}")
    return _apply_blocks(w, _neighbor_blocks(transforms, neighbors_a, neighbors_b, thresholds))


def normalize_scores(w: ScoreMatrix) -> ScoreMatrix:
    """Min-max rescale the whole matrix to [0, 1].

    A constant matrix maps to all ones (no information) unless it is
    identically zero, which stays zero.
    """
    w = np.asarray(w, dtype=float)
    if not np.all(np.isfinite(w)):
        raise ValueError("score matrix entries must be finite")
    lo = w.min()
    hi = w.max()
    if hi > lo:
        return (w - lo) / (hi - lo)
    if hi > 0:
        return np.ones_like(w)
    return np.zeros_like(w)


def iterate_scores(
    a: PointSet,
    b: PointSet,
    k: int,
    thresholds: SimilarityThresholds = DEFAULT_THRESHOLDS,
    config: IterationConfig = IterationConfig(),
    on_iteration: Optional[Callable[[int, ScoreMatrix], None]] = None,
) -> tuple[ScoreMatrix, int]:
    """Run the full update/normalize loop from the all-ones start.

    Stops after ``config.max_iterations`` updates, or earlier once the
    largest entrywise change between consecutive normalized matrices
    falls below ``config.convergence_tol``. ``on_iteration`` (if given)
    receives ``(iteration_number, normalized_matrix)`` after each step.

    Returns the final normalized matrix and the number of updates run.
    """
    transforms = precompute_transforms(a, b)
    neighbors_a = build_neighbor_table(a, k)
    neighbors_b = build_neighbor_table(b, k)
    m, n = transforms.shape
    total = m * n * neighbors_a.shape[1] * neighbors_b.shape[1]
    cached = None
    if 0 < total <= _CACHE_ELEMENT_LIMIT:
        cached = list(_neighbor_blocks(transforms, neighbors_a, neighbors_b, thresholds))

    w = init_scores(m, n)
    prev = None
    n_iter = 0
    for _ in range(config.max_iterations):
        blocks = cached if cached is not None else _neighbor_blocks(
            transforms, neighbors_a, neighbors_b, thresholds
        )
        w = normalize_scores(_apply_blocks(w, blocks))
        n_iter += 1
        if on_iteration is not None:
            on_iteration(n_iter, w)
        if prev is not None and float(np.max(np.abs(w - prev))) < config.convergence_tol:
            break
        prev = w
    return w, n_iter

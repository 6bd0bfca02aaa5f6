"""K-nearest-neighbor tables over point sets (locations only)."""

from __future__ import annotations

import numpy as np

from .errors import DegenerateInputError
from .geometry import PointSet

# A neighbor table is an (n, k_eff) int array: row i lists the indices of
# point i's nearest neighbors, nearest first, self excluded.
NeighborTable = np.ndarray


def build_neighbor_table(points: PointSet, k: int) -> NeighborTable:
    """Index the ``min(k, n - 1)`` nearest neighbors of every point.

    Distances are Euclidean over locations; orientations are ignored.
    Exact distance ties are broken by ascending index, so the table is
    deterministic for a given set and ``k``. ``k`` larger than ``n - 1``
    is clamped (every other point becomes a neighbor).
    """
    n = len(points)
    if n == 0:
        raise DegenerateInputError("cannot build a neighbor table for an empty point set")
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    k_eff = min(k, n - 1)
    xy = points.xy
    diff = xy[:, None, :] - xy[None, :, :]
    d2 = np.einsum("ijc,ijc->ij", diff, diff)
    np.fill_diagonal(d2, np.inf)
    # stable sort keeps equal distances in index order
    order = np.argsort(d2, axis=1, kind="stable")
    return order[:, :k_eff].copy()

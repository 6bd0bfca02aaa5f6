"""Maximum-total-score bipartite assignment over a score matrix."""

from __future__ import annotations

from typing import Optional

import numpy as np
from scipy.optimize import linear_sum_assignment

# A matching is a list of (i, j) pairs; each index appears at most once
# per side.
Matching = list[tuple[int, int]]


def kuhn_munkres_max(w) -> Matching:
    """Matching of size min(m, n) maximizing the sum of selected entries.

    Rectangular matrices behave as if zero-padded to square: the smaller
    side is always fully matched. When several matchings reach the same
    total, which one is returned is implementation-defined.
    """
    w = np.asarray(w, dtype=float)
    if w.ndim != 2 or w.size == 0:
        raise ValueError(f"expected a nonempty 2-D score matrix, got shape {w.shape}")
    if not np.all(np.isfinite(w)):
        raise ValueError("score matrix entries must be finite")
    rows, cols = linear_sum_assignment(w, maximize=True)
    return list(zip(rows.tolist(), cols.tolist()))


def filter_matches(matching: Matching, w, tau: Optional[float] = None) -> Matching:
    """Drop pairs scoring below ``tau``; ``tau=None`` keeps everything."""
    if tau is None:
        return list(matching)
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"tau must lie in [0, 1], got {tau!r}")
    w = np.asarray(w, dtype=float)
    return [(i, j) for i, j in matching if w[i, j] >= tau]

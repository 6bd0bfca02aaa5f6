"""Input validation helpers shared by the estimator, CLI, and library."""

from __future__ import annotations

import numpy as np

from .errors import DegenerateInputError
from .geometry import PointSet


def check_directed_points(X, *, name: str = "X", min_points: int = 1) -> PointSet:
    """Coerce array-like input to a validated :class:`PointSet`.

    Accepts an existing PointSet, or anything convertible to an (n, 3)
    float array of ``x, y, theta`` rows. Angles are wrapped to [0, 2*pi).
    """
    if isinstance(X, PointSet):
        points = X
    else:
        arr = np.asarray(X, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 3:
            raise ValueError(
                f"{name} must be an (n, 3) array of x, y, theta rows, got shape {arr.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise ValueError(f"{name} contains non-finite values")
        points = PointSet.from_array(arr)
    if len(points) < min_points:
        raise DegenerateInputError(
            f"{name} needs at least {min_points} point(s), got {len(points)}"
        )
    return points

"""Directed points and planar rigid transforms.

All angles are radians, stored wrapped to [0, 2*pi). A rigid transform
rotates by ``theta`` about the origin and then translates by
``(tx, ty)``; orientations are transported additively.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

TWO_PI = 2.0 * math.pi


def wrap_angle(theta: float) -> float:
    """Wrap a scalar angle to [0, 2*pi)."""
    wrapped = float(theta) % TWO_PI
    # % of a tiny negative rounds up to exactly 2*pi
    return 0.0 if wrapped >= TWO_PI else wrapped


def wrap_angles(theta) -> np.ndarray:
    """Array version of :func:`wrap_angle`."""
    wrapped = np.mod(np.asarray(theta, dtype=float), TWO_PI)
    return np.where(wrapped >= TWO_PI, 0.0, wrapped)


def angular_distance(a: float, b: float) -> float:
    """Shortest separation between two angles, in [0, pi].

    Built from ``|a - b|`` so the result is exactly symmetric.
    """
    d = wrap_angle(abs(a - b))
    return min(d, TWO_PI - d)


def angular_distances(a, b) -> np.ndarray:
    """Array version of :func:`angular_distance`."""
    d = wrap_angles(np.abs(np.asarray(a, dtype=float) - np.asarray(b, dtype=float)))
    return np.minimum(d, TWO_PI - d)


def _require_finite(label: str, *values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"{label} must be finite, got {v!r}")


@dataclass(frozen=True)
class DirectedPoint:
    """A planar point carrying an orientation angle."""

    x: float
    y: float
    theta: float

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        object.__setattr__(self, "theta", float(self.theta))
        _require_finite("DirectedPoint fields", self.x, self.y, self.theta)
        object.__setattr__(self, "theta", wrap_angle(self.theta))


@dataclass(frozen=True)
class RigidTransform:
    """Rotation by ``theta`` about the origin, then translation (tx, ty)."""

    theta: float
    tx: float
    ty: float

    def __post_init__(self):
        object.__setattr__(self, "theta", float(self.theta))
        object.__setattr__(self, "tx", float(self.tx))
        object.__setattr__(self, "ty", float(self.ty))
        _require_finite("RigidTransform fields", self.theta, self.tx, self.ty)
        object.__setattr__(self, "theta", wrap_angle(self.theta))

    @classmethod
    def identity(cls) -> "RigidTransform":
        return cls(0.0, 0.0, 0.0)


class PointSet:
    """An ordered, immutable collection of directed points.

    Index ``i`` refers to the same point for the lifetime of the set.
    Data is held as a read-only ``(n, 3)`` float array of ``x, y, theta``
    rows; :attr:`xy` and :attr:`theta` are views into it.
    """

    __slots__ = ("_data",)

    def __init__(self, points: Iterable[DirectedPoint] = ()):
        data = np.array([(p.x, p.y, p.theta) for p in points], dtype=float)
        data = data.reshape(-1, 3)
        data.setflags(write=False)
        self._data = data

    @classmethod
    def from_array(cls, arr) -> "PointSet":
        """Build a set from an ``(n, 3)`` array; angles are wrapped."""
        arr = np.asarray(arr, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 3:
            raise ValueError(f"expected an (n, 3) array, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("point coordinates and angles must be finite")
        data = arr.copy()
        data[:, 2] = wrap_angles(data[:, 2])
        data.setflags(write=False)
        obj = cls.__new__(cls)
        obj._data = data
        return obj

    def as_array(self) -> np.ndarray:
        """Read-only ``(n, 3)`` view of ``x, y, theta`` rows."""
        return self._data

    @property
    def xy(self) -> np.ndarray:
        return self._data[:, :2]

    @property
    def theta(self) -> np.ndarray:
        return self._data[:, 2]

    def __len__(self) -> int:
        return self._data.shape[0]

    def __getitem__(self, i) -> DirectedPoint:
        if not isinstance(i, (int, np.integer)):
            raise TypeError("PointSet indices must be integers")
        x, y, theta = self._data[i]
        return DirectedPoint(x, y, theta)

    def __iter__(self) -> Iterator[DirectedPoint]:
        for row in self._data:
            yield DirectedPoint(row[0], row[1], row[2])

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return np.array_equal(self._data, other._data)

    def __repr__(self) -> str:
        return f"PointSet(n={len(self)})"


def apply_transform(t: RigidTransform, p: DirectedPoint) -> DirectedPoint:
    """Map a directed point through a rigid transform.

    The location is rotated then translated; the orientation gains the
    transform's rotation angle.
    """
    c, s = math.cos(t.theta), math.sin(t.theta)
    return DirectedPoint(
        t.tx + c * p.x - s * p.y,
        t.ty + s * p.x + c * p.y,
        p.theta + t.theta,
    )


def transform_point_set(t: RigidTransform, points: PointSet) -> PointSet:
    """Apply ``t`` to every point of a set, preserving order."""
    c, s = math.cos(t.theta), math.sin(t.theta)
    xy = points.xy
    out = np.empty((len(points), 3))
    out[:, 0] = t.tx + c * xy[:, 0] - s * xy[:, 1]
    out[:, 1] = t.ty + s * xy[:, 0] + c * xy[:, 1]
    out[:, 2] = points.theta + t.theta
    return PointSet.from_array(out)


def compute_transform(p: DirectedPoint, q: DirectedPoint) -> RigidTransform:
    """Recover the unique rigid transform mapping ``p`` onto ``q``.

    The rotation is the orientation difference; the translation is
    whatever is left after rotating ``p``'s location. Applying the
    result to ``p`` reproduces ``q`` exactly (up to rounding).
    """
    theta = wrap_angle(q.theta - p.theta)
    c, s = math.cos(theta), math.sin(theta)
    return RigidTransform(
        theta,
        q.x - (p.x * c - p.y * s),
        q.y - (p.x * s + p.y * c),
    )

"""File formats: point-set text files, ground-truth CSV, match CSV.

Point-set files carry one ``x y theta`` line per point (whitespace
separated, angles in radians); ``#`` lines are comments and blank lines
are skipped. All writers go through an atomic temp-file + rename so an
interrupted run never leaves a partial file behind.
"""

from __future__ import annotations

import csv
import math
import os
import tempfile
from contextlib import contextmanager
from pathlib import Path
from typing import Iterable, Optional, TextIO

import numpy as np

from .errors import PointFileParseError
from .geometry import PointSet, RigidTransform
from .synth import GroundTruth


@contextmanager
def atomic_write_text(path):
    """Write to a temp file in the target directory, rename on success."""
    path = Path(path)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    tmp = Path(tmp_name)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            yield fh
        os.replace(tmp, path)
    except BaseException:
        tmp.unlink(missing_ok=True)
        raise


def read_point_set(path) -> PointSet:
    """Parse a point-set text file; errors carry the offending line number."""
    rows = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise PointFileParseError(
                    path, lineno, f"expected 3 fields 'x y theta', got {len(parts)}"
                )
            try:
                values = [float(p) for p in parts]
            except ValueError:
                raise PointFileParseError(path, lineno, f"not a number in {line!r}") from None
            if not all(math.isfinite(v) for v in values):
                raise PointFileParseError(path, lineno, "non-finite value")
            rows.append(values)
    return PointSet.from_array(np.array(rows, dtype=float).reshape(-1, 3))


def write_point_set(path, points: PointSet, comment: Optional[str] = None) -> None:
    with atomic_write_text(path) as fh:
        if comment:
            fh.write(f"# {comment}\n")
        for row in points.as_array():
            fh.write(f"{float(row[0])!r} {float(row[1])!r} {float(row[2])!r}\n")


def write_ground_truth_csv(path, truth: GroundTruth) -> None:
    """One row per original pair: ``i,j,is_outlier`` with j post-shuffle."""
    outliers = set(int(i) for i in truth.outlier_indices_a)
    with atomic_write_text(path) as fh:
        writer = csv.writer(fh)
        writer.writerow(["i", "j", "is_outlier"])
        for i, j in enumerate(truth.permutation):
            writer.writerow([i, int(j), int(i in outliers)])


def read_ground_truth_csv(path) -> list[tuple[int, int, bool]]:
    rows = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["i", "j", "is_outlier"]:
            raise PointFileParseError(path, 1, f"unexpected header {header!r}")
        for i, j, flag in reader:
            rows.append((int(i), int(j), bool(int(flag))))
    return rows


def write_match_csv(
    fh: TextIO,
    pairs: Iterable[tuple[int, int]],
    scores: Iterable[float],
    transform: RigidTransform,
) -> None:
    """``i,j,score`` rows plus a trailing ``# transform theta tx ty`` line."""
    writer = csv.writer(fh)
    writer.writerow(["i", "j", "score"])
    for (i, j), score in zip(pairs, scores):
        writer.writerow([i, j, repr(float(score))])
    fh.write(f"# transform {transform.theta!r} {transform.tx!r} {transform.ty!r}\n")


def read_match_csv(path) -> tuple[list[tuple[int, int]], list[float], Optional[RigidTransform]]:
    pairs: list[tuple[int, int]] = []
    scores: list[float] = []
    transform = None
    with open(path, encoding="utf-8", newline="") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                parts = line[1:].split()
                if parts[:1] == ["transform"]:
                    theta, tx, ty = (float(v) for v in parts[1:4])
                    transform = RigidTransform(theta, tx, ty)
                continue
            i, j, score = line.split(",")
            if i == "i":
                continue
            pairs.append((int(i), int(j)))
            scores.append(float(score))
    return pairs, scores, transform

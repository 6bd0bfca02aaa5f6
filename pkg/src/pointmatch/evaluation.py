"""Correctness metric (ACPPR) and the seeded benchmark grid harness.

ACPPR, the average correct point pair ratio, is the fraction of a
scene's true pairs that the matcher recovered; extra wrong pairs do not
change it. The grid harness sweeps (K, outlier ratio, jitter ratio)
cells, runs a fixed number of seeded trials per cell, and reports cell
means plus row/column margin averages per K.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable, Iterable, Optional

import numpy as np

from .errors import PointMatchError, UndefinedMetricError
from .io import atomic_write_text, read_ground_truth_csv, read_match_csv
from .matching import MatchConfig, match_point_sets
from .synth import GroundTruth, SynthConfig, generate_scene

# Trial seeds are spaced far enough apart that cells never collide for
# any realistic trial count.
_CELL_SEED_STRIDE = 1_000_003


def acppr(pairs: Iterable[tuple[int, int]], truth: GroundTruth) -> float:
    """Recovered true pairs over all true pairs, in [0, 1].

    A pair counts only if both indices equal a true pair's; wrong extra
    pairs are ignored rather than penalized.
    """
    true_pairs = set(map(tuple, truth.true_pairs))
    if not true_pairs:
        raise UndefinedMetricError("scene has no true pairs (outlier ratio 1?)")
    recovered = set(map(tuple, pairs))
    return len(recovered & true_pairs) / len(true_pairs)


def acppr_from_files(match_csv_path, truth_csv_path) -> float:
    """Score a match CSV against a ground-truth CSV, standalone."""
    pairs, _, _ = read_match_csv(match_csv_path)
    true_pairs = {(i, j) for i, j, is_outlier in read_ground_truth_csv(truth_csv_path) if not is_outlier}
    if not true_pairs:
        raise UndefinedMetricError("truth file has no true pairs")
    return len(set(pairs) & true_pairs) / len(true_pairs)


def run_trial(synth_config: SynthConfig, match_config: MatchConfig) -> float:
    """Generate one scene, match it, and score the result."""
    a, b, truth = generate_scene(synth_config)
    result = match_point_sets(a, b, match_config)
    return acppr(result.pairs, truth)


@dataclass(frozen=True)
class GridSpec:
    """A benchmark sweep: axes, per-cell trial count, and templates.

    ``synth`` supplies everything but the swept ratios and the seed;
    ``match`` supplies everything but K. Trial seeds derive from
    ``base_seed`` plus a deterministic function of cell and trial index.
    """

    k_values: tuple[int, ...]
    outlier_ratios: tuple[float, ...]
    jitter_ratios: tuple[float, ...]
    synth: SynthConfig
    match: MatchConfig
    trials: int = 20
    base_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "k_values", tuple(int(k) for k in self.k_values))
        object.__setattr__(self, "outlier_ratios", tuple(float(v) for v in self.outlier_ratios))
        object.__setattr__(self, "jitter_ratios", tuple(float(v) for v in self.jitter_ratios))
        for name in ("k_values", "outlier_ratios", "jitter_ratios"):
            if not getattr(self, name):
                raise ValueError(f"{name} must be nonempty")
        if self.trials < 1:
            raise ValueError(f"trials must be at least 1, got {self.trials}")


@dataclass(frozen=True)
class GridResult:
    """Per-trial ACPPR values over the swept grid (fractions in [0, 1])."""

    k_values: tuple[int, ...]
    outlier_ratios: tuple[float, ...]
    jitter_ratios: tuple[float, ...]
    trial_values: np.ndarray  # shape (n_k, n_outlier, n_jitter, trials)

    @property
    def cell_means(self) -> np.ndarray:
        return self.trial_values.mean(axis=3)

    def row_averages(self) -> np.ndarray:
        """Mean over jitter ratios: shape (n_k, n_outlier)."""
        return self.cell_means.mean(axis=2)

    def column_averages(self) -> np.ndarray:
        """Mean over outlier ratios: shape (n_k, n_jitter)."""
        return self.cell_means.mean(axis=1)

    def grand_means(self) -> np.ndarray:
        """Mean over the whole grid per K: shape (n_k,)."""
        return self.cell_means.mean(axis=(1, 2))

    def k_index(self, k: int) -> int:
        return self.k_values.index(k)


def trial_seed(base_seed: int, cell_index: int, trial_index: int) -> int:
    return base_seed + cell_index * _CELL_SEED_STRIDE + trial_index


def run_grid(
    spec: GridSpec,
    progress: Optional[Callable[[int, float, float, float], None]] = None,
) -> GridResult:
    """Run every (K, outlier, jitter) cell of the grid.

    Trials are pure and keyed by (cell, trial) index, so results do not
    depend on execution order. ``progress`` (if given) receives
    ``(k, outlier, jitter, cell_mean)`` after each finished cell.
    """
    shape = (len(spec.k_values), len(spec.outlier_ratios), len(spec.jitter_ratios), spec.trials)
    values = np.empty(shape)
    cell_index = 0
    for ik, k in enumerate(spec.k_values):
        match_config = replace(spec.match, k=k)
        for io_, outlier in enumerate(spec.outlier_ratios):
            for ij, jitter in enumerate(spec.jitter_ratios):
                for t in range(spec.trials):
                    synth_config = replace(
                        spec.synth,
                        outlier_ratio=outlier,
                        jitter_ratio=jitter,
                        seed=trial_seed(spec.base_seed, cell_index, t),
                    )
                    try:
                        values[ik, io_, ij, t] = run_trial(synth_config, match_config)
                    except PointMatchError as exc:
                        raise type(exc)(
                            f"grid cell K={k} outlier={outlier} jitter={jitter} "
                            f"trial={t}: {exc}"
                        ) from exc
                if progress is not None:
                    progress(k, outlier, jitter, float(values[ik, io_, ij].mean()))
                cell_index += 1
    return GridResult(spec.k_values, spec.outlier_ratios, spec.jitter_ratios, values)


def _pct(value: float) -> str:
    return f"{100.0 * value:g}"


def write_grid_csv(result: GridResult, k: int, path) -> None:
    """One per-K table: rows = outlier ratios, columns = jitter ratios,
    margin averages on both, values in percent."""
    ik = result.k_index(k)
    means = result.cell_means[ik]
    row_avg = result.row_averages()[ik]
    col_avg = result.column_averages()[ik]
    grand = result.grand_means()[ik]
    with atomic_write_text(path) as fh:
        header = ["outlier_pct"] + [f"jitter_{_pct(j)}" for j in result.jitter_ratios]
        fh.write(",".join(header + ["average"]) + "\n")
        for io_, outlier in enumerate(result.outlier_ratios):
            cells = [f"{100.0 * v:.2f}" for v in means[io_]]
            fh.write(",".join([_pct(outlier)] + cells + [f"{100.0 * row_avg[io_]:.2f}"]) + "\n")
        footer = [f"{100.0 * v:.2f}" for v in col_avg]
        fh.write(",".join(["average"] + footer + [f"{100.0 * grand:.2f}"]) + "\n")


def write_grid_csvs(result: GridResult, out_dir) -> list[Path]:
    out_dir = Path(out_dir)
    paths = []
    for k in result.k_values:
        path = out_dir / f"acppr_k{k}.csv"
        write_grid_csv(result, k, path)
        paths.append(path)
    return paths


def emit_figure_series(result: GridResult, figure: int) -> list[tuple[float, str, float]]:
    """Flatten the grid into (x, curve_label, y) rows for one figure.

    Figure 1 plots mean ACPPR against K (one curve per outlier/jitter
    combination); figure 2 against outlier percent (one curve per K,
    split further if several jitters are present); figure 3 against
    jitter percent (one curve per K, split by outlier). ``y`` is the
    cell-mean fraction.
    """
    means = result.cell_means
    ks = result.k_values
    outs = result.outlier_ratios
    jits = result.jitter_ratios
    rows: list[tuple[float, str, float]] = []
    if figure == 1:
        if not ks:
            raise ValueError("grid does not cover the K axis")
        for io_, o in enumerate(outs):
            for ij, j in enumerate(jits):
                label = f"outlier={_pct(o)}% jitter={_pct(j)}%"
                for ik, k in enumerate(ks):
                    rows.append((float(k), label, float(means[ik, io_, ij])))
    elif figure == 2:
        if not outs:
            raise ValueError("grid does not cover the outlier-ratio axis")
        for ik, k in enumerate(ks):
            for ij, j in enumerate(jits):
                label = f"K={k}" if len(jits) == 1 else f"K={k} jitter={_pct(j)}%"
                for io_, o in enumerate(outs):
                    rows.append((100.0 * o, label, float(means[ik, io_, ij])))
    elif figure == 3:
        if not jits:
            raise ValueError("grid does not cover the jitter-ratio axis")
        for ik, k in enumerate(ks):
            for io_, o in enumerate(outs):
                label = f"K={k}" if len(outs) == 1 else f"K={k} outlier={_pct(o)}%"
                for ij, j in enumerate(jits):
                    rows.append((100.0 * j, label, float(means[ik, io_, ij])))
    else:
        raise ValueError(f"figure must be 1, 2, or 3, got {figure!r}")
    return rows


def write_figure_csv(result: GridResult, figure: int, path) -> None:
    """``x,curve_label,y`` rows; y rendered as percent."""
    rows = emit_figure_series(result, figure)
    with atomic_write_text(path) as fh:
        fh.write("x,curve_label,y\n")
        for x, label, y in rows:
            fh.write(f"{x:g},{label},{100.0 * y:.4f}\n")

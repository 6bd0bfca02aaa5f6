"""Command-line interface.

Subcommands: ``match`` two point files, ``generate`` a synthetic scene
with ground truth, ``bench`` a (K, outlier, jitter) grid. Every value
can come from a flag, a flat ``key = value`` config file, or a built-in
default, in that order of precedence. All randomness flows from
``--seed``; environment variables are never consulted.

Exit codes: 0 success, 2 usage or parse problem, 3 degenerate input,
4 internal error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from .errors import (
    DegenerateInputError,
    NoCorrespondencesError,
    PointFileParseError,
    PointMatchError,
    UndefinedMetricError,
)
from .evaluation import GridSpec, run_grid, write_figure_csv, write_grid_csvs
from .geometry import RigidTransform
from .io import atomic_write_text, read_point_set, write_ground_truth_csv, write_match_csv, write_point_set
from .matching import MatchConfig, match_point_sets
from .scoring import IterationConfig
from .similarity import SimilarityThresholds
from .synth import SynthConfig, generate_scene

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DEGENERATE = 3
EXIT_INTERNAL = 4

_DEFAULTS = {
    "n": 50,
    "range": 100.0,
    "outlier": 0.0,
    "jitter": 0.0,
    "seed": 0,
    "transform": "random",
    "k": 12,
    "alpha": 10.0,
    "beta": 10.0,
    "delta": math.pi / 6,
    "max_iterations": 10,
    "convergence_tol": 1e-4,
    "tau": None,
    "trials": 20,
    "k_list": (6, 12, 25, 50),
    "outlier_list": (0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6),
    "jitter_list": (0.0, 0.02, 0.04, 0.06, 0.08, 0.1, 0.12),
}

_PARSERS = {
    "n": int,
    "range": float,
    "outlier": float,
    "jitter": float,
    "seed": int,
    "transform": str,
    "k": int,
    "alpha": float,
    "beta": float,
    "delta": float,
    "max_iterations": int,
    "convergence_tol": float,
    "tau": lambda s: None if s.lower() in ("none", "off", "disabled") else float(s),
    "trials": int,
    "k_list": lambda s: tuple(int(v) for v in s.split(",") if v.strip()),
    "outlier_list": lambda s: tuple(float(v) for v in s.split(",") if v.strip()),
    "jitter_list": lambda s: tuple(float(v) for v in s.split(",") if v.strip()),
}


def _load_config_file(path) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
            key, _, value = line.partition("=")
            key = key.strip().replace("-", "_")
            if key not in _PARSERS:
                raise ValueError(f"{path}:{lineno}: unknown configuration key {key!r}")
            values[key] = value.strip()
    return values


class _Resolver:
    """flag > config file > built-in default."""

    def __init__(self, args):
        self.args = args
        self.file_values = _load_config_file(args.config) if args.config else {}

    def __call__(self, name: str):
        flag = getattr(self.args, name, None)
        if flag is not None:
            return flag
        if name in self.file_values:
            return _PARSERS[name](self.file_values[name])
        return _DEFAULTS[name]


def _parse_transform(text: str) -> RigidTransform | None:
    if text.strip().lower() == "random":
        return None
    parts = [p for p in text.replace(",", " ").split() if p]
    if len(parts) != 3:
        raise ValueError(f"transform must be 'random' or 'theta,tx,ty', got {text!r}")
    theta, tx, ty = (float(p) for p in parts)
    return RigidTransform(theta, tx, ty)


def _int_list(text: str) -> tuple[int, ...]:
    return _PARSERS["k_list"](text)


def _float_list(text: str) -> tuple[float, ...]:
    return _PARSERS["outlier_list"](text)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pointmatch",
        description="Match directed 2-D point sets; generate and benchmark synthetic scenes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    match = sub.add_parser("match", help="match two point-set files")
    match.add_argument("file_a", help="source point file (x y theta per line)")
    match.add_argument("file_b", help="target point file")
    match.add_argument("--config", help="flat key = value configuration file")
    match.add_argument("--k", type=int, help="neighborhood size (default 12)")
    match.add_argument("--alpha", type=float, help="x-translation threshold (default 10)")
    match.add_argument("--beta", type=float, help="y-translation threshold (default 10)")
    match.add_argument("--delta", type=float, help="angle threshold in radians (default pi/6)")
    match.add_argument("--max-iterations", type=int, dest="max_iterations")
    match.add_argument("--convergence-tol", type=float, dest="convergence_tol")
    match.add_argument("--tau", type=float, help="drop pairs scoring below this (default: keep all)")
    match.add_argument("-o", "--output", help="write the pairs CSV here instead of stdout")
    match.add_argument("--dump-scores", dest="dump_scores", help="directory for per-iteration score matrices")
    match.set_defaults(func=_cmd_match)

    gen = sub.add_parser("generate", help="generate a synthetic scene with ground truth")
    gen.add_argument("--config", help="flat key = value configuration file")
    gen.add_argument("--n", type=int, help="points per set (default 50)")
    gen.add_argument("--range", type=float, help="scene side length (default 100)")
    gen.add_argument("--outlier", type=float, help="outlier ratio in [0, 1] (default 0)")
    gen.add_argument("--jitter", type=float, help="jitter ratio in [0, 1] (default 0)")
    gen.add_argument("--seed", type=int, help="RNG seed (default 0)")
    gen.add_argument("--transform", help="'random' or 'theta,tx,ty' (default random)")
    gen.add_argument("--out-prefix", dest="out_prefix", default="scene",
                     help="prefix for <prefix>_a.txt, <prefix>_b.txt, <prefix>_truth.csv")
    gen.set_defaults(func=_cmd_generate)

    bench = sub.add_parser("bench", help="run a (K, outlier, jitter) benchmark grid")
    bench.add_argument("--config", help="flat key = value configuration file")
    bench.add_argument("--n", type=int, help="points per set (default 50)")
    bench.add_argument("--range", type=float, help="scene side length (default 100)")
    bench.add_argument("--alpha", type=float)
    bench.add_argument("--beta", type=float)
    bench.add_argument("--delta", type=float)
    bench.add_argument("--max-iterations", type=int, dest="max_iterations")
    bench.add_argument("--convergence-tol", type=float, dest="convergence_tol")
    bench.add_argument("--tau", type=float)
    bench.add_argument("--k-list", dest="k_list", type=_int_list, help="comma-separated K values")
    bench.add_argument("--outlier-list", dest="outlier_list", type=_float_list,
                       help="comma-separated outlier ratios")
    bench.add_argument("--jitter-list", dest="jitter_list", type=_float_list,
                       help="comma-separated jitter ratios")
    bench.add_argument("--trials", type=int, help="trials per cell (default 20)")
    bench.add_argument("--seed", type=int, help="base seed (default 0)")
    bench.add_argument("--out-dir", dest="out_dir", default=".", help="directory for result CSVs")
    bench.add_argument("--emit-fig", dest="emit_fig", action="append", type=int, choices=(1, 2, 3),
                       help="also write figure series CSV (repeatable)")
    bench.set_defaults(func=_cmd_bench)

    return parser


def _match_config(resolve: _Resolver) -> MatchConfig:
    return MatchConfig(
        k=resolve("k"),
        thresholds=SimilarityThresholds(resolve("alpha"), resolve("beta"), resolve("delta")),
        iteration=IterationConfig(resolve("max_iterations"), resolve("convergence_tol")),
        tau=resolve("tau"),
    )


def _cmd_match(args) -> int:
    resolve = _Resolver(args)
    config = _match_config(resolve)
    a = read_point_set(args.file_a)
    b = read_point_set(args.file_b)

    on_iteration = None
    if args.dump_scores:
        dump_dir = Path(args.dump_scores)
        dump_dir.mkdir(parents=True, exist_ok=True)

        def on_iteration(iteration, matrix):
            with atomic_write_text(dump_dir / f"scores_iter_{iteration:03d}.csv") as fh:
                for row in matrix:
                    fh.write(",".join(repr(float(v)) for v in row) + "\n")

    result = match_point_sets(a, b, config, on_iteration)
    if args.output:
        with atomic_write_text(args.output) as fh:
            write_match_csv(fh, result.pairs, result.scores, result.global_transform)
    else:
        write_match_csv(sys.stdout, result.pairs, result.scores, result.global_transform)
    return EXIT_OK


def _cmd_generate(args) -> int:
    resolve = _Resolver(args)
    transform_text = resolve("transform")
    config = SynthConfig(
        n=resolve("n"),
        scene_range=resolve("range"),
        outlier_ratio=resolve("outlier"),
        jitter_ratio=resolve("jitter"),
        transform=_parse_transform(transform_text),
        seed=resolve("seed"),
    )
    a, b, truth = generate_scene(config)
    prefix = args.out_prefix
    parent = Path(prefix).parent
    if parent and not parent.exists():
        parent.mkdir(parents=True, exist_ok=True)
    path_a = f"{prefix}_a.txt"
    path_b = f"{prefix}_b.txt"
    path_truth = f"{prefix}_truth.csv"
    write_point_set(path_a, a, comment="x y theta")
    write_point_set(path_b, b, comment="x y theta")
    write_ground_truth_csv(path_truth, truth)
    print(f"wrote {path_a}, {path_b}, {path_truth}", file=sys.stderr)
    return EXIT_OK


def _cmd_bench(args) -> int:
    resolve = _Resolver(args)
    spec = GridSpec(
        k_values=resolve("k_list"),
        outlier_ratios=resolve("outlier_list"),
        jitter_ratios=resolve("jitter_list"),
        synth=SynthConfig(n=resolve("n"), scene_range=resolve("range"), seed=0),
        match=_match_config(resolve),
        trials=resolve("trials"),
        base_seed=resolve("seed"),
    )
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    def progress(k, outlier, jitter, mean):
        print(f"K={k} outlier={outlier:g} jitter={jitter:g}: mean ACPPR {100 * mean:.2f}%",
              file=sys.stderr)

    result = run_grid(spec, progress)
    paths = write_grid_csvs(result, out_dir)
    for figure in sorted(set(args.emit_fig or ())):
        path = out_dir / f"fig{figure}.csv"
        write_figure_csv(result, figure, path)
        paths.append(path)
    print("wrote " + ", ".join(str(p) for p in paths), file=sys.stderr)
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except PointFileParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DegenerateInputError, NoCorrespondencesError, UndefinedMetricError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except PointMatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()

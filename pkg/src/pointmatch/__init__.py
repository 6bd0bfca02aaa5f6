"""Robust matching of directed 2-D point sets.

Candidate pairings vote for rigid-transform hypotheses; iterated
neighbor-consistency scoring concentrates weight on mutually consistent
pairings, and an optimal assignment extracts the final correspondence
set together with a global rigid transform. Includes a seeded synthetic
scene generator and a benchmark grid harness.
"""

from .assignment import Matching, filter_matches, kuhn_munkres_max
from .errors import (
    DegenerateInputError,
    NoCorrespondencesError,
    PointFileParseError,
    PointMatchError,
    UndefinedMetricError,
)
from .evaluation import (
    GridResult,
    GridSpec,
    acppr,
    acppr_from_files,
    emit_figure_series,
    run_grid,
    run_trial,
    write_figure_csv,
    write_grid_csvs,
)
from .geometry import (
    DirectedPoint,
    PointSet,
    RigidTransform,
    angular_distance,
    apply_transform,
    compute_transform,
    transform_point_set,
    wrap_angle,
)
from .matching import (
    MatchConfig,
    MatchResult,
    PointSetMatcher,
    estimate_global_transform,
    match_point_sets,
)
from .neighbors import NeighborTable, build_neighbor_table
from .scoring import (
    IterationConfig,
    ScoreMatrix,
    TransformTable,
    init_scores,
    iterate_scores,
    normalize_scores,
    precompute_transforms,
    update_scores,
)
from .similarity import DEFAULT_THRESHOLDS, SimilarityThresholds, transform_similarity
from .synth import GroundTruth, SynthConfig, generate_scene
from .validation import check_directed_points

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_THRESHOLDS",
    "DegenerateInputError",
    "DirectedPoint",
    "GridResult",
    "GridSpec",
    "GroundTruth",
    "IterationConfig",
    "MatchConfig",
    "MatchResult",
    "Matching",
    "NeighborTable",
    "NoCorrespondencesError",
    "PointFileParseError",
    "PointMatchError",
    "PointSet",
    "PointSetMatcher",
    "RigidTransform",
    "ScoreMatrix",
    "SimilarityThresholds",
    "SynthConfig",
    "TransformTable",
    "UndefinedMetricError",
    "acppr",
    "acppr_from_files",
    "angular_distance",
    "apply_transform",
    "build_neighbor_table",
    "check_directed_points",
    "compute_transform",
    "emit_figure_series",
    "estimate_global_transform",
    "filter_matches",
    "generate_scene",
    "init_scores",
    "iterate_scores",
    "kuhn_munkres_max",
    "match_point_sets",
    "normalize_scores",
    "precompute_transforms",
    "run_grid",
    "run_trial",
    "transform_point_set",
    "transform_similarity",
    "update_scores",
    "wrap_angle",
    "write_figure_csv",
    "write_grid_csvs",
]

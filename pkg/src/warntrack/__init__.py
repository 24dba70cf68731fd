"""Track the evolution of static-analysis warnings between source revisions."""

from .assignment import CandidateMatrix, solve_assignment
from .declarations import Decl, DeclIndex, DeclKind, build_decl_index, locate_context
from .diffing import (
    DiffResult,
    Hunk,
    HunkKind,
    RegionChange,
    Side,
    anchor_offset,
    compute_diff,
    region_change_kind,
)
from .errors import (
    ConfigurationError,
    ReportParseError,
    RewriteConflictError,
    ValidationError,
    WarntrackError,
)
from .evaluation import GroundTruth, PrecisionReport, evaluate, load_ground_truth
from .fix_rules import ClassifiedRemovals, classify_removed
from .matching import (
    MatcherConfig,
    Mode,
    TrackResult,
    build_candidate_matrix,
    exact_match,
    hash_match,
    location_match,
    snippet_match,
    track_sota,
    track_statictracker,
)
from .model import (
    Detector,
    EvolutionStatus,
    ExactKey,
    WarningInstance,
    WarningSet,
    exact_key,
    normalize_volatile_identifiers,
    parse_report,
    warning_set_to_json,
)
from .pipeline import compute_pair_diffs, run_tracking
from .refactorings import (
    Locator,
    RefactoringRecord,
    RefactoringSet,
    parse_refactorings,
    rewrite_metadata,
)
from .snapshots import (
    RevisionPair,
    Snapshot,
    compute_revision_pair,
    load_renames,
    load_snapshot,
)

__version__ = "0.1.0"

__all__ = [
    "CandidateMatrix",
    "ClassifiedRemovals",
    "ConfigurationError",
    "Decl",
    "DeclIndex",
    "DeclKind",
    "Detector",
    "DiffResult",
    "EvolutionStatus",
    "ExactKey",
    "GroundTruth",
    "Hunk",
    "HunkKind",
    "Locator",
    "MatcherConfig",
    "Mode",
    "PrecisionReport",
    "RefactoringRecord",
    "RefactoringSet",
    "RegionChange",
    "ReportParseError",
    "RevisionPair",
    "RewriteConflictError",
    "Side",
    "Snapshot",
    "TrackResult",
    "ValidationError",
    "WarningInstance",
    "WarningSet",
    "WarntrackError",
    "anchor_offset",
    "build_candidate_matrix",
    "build_decl_index",
    "classify_removed",
    "compute_diff",
    "compute_pair_diffs",
    "compute_revision_pair",
    "evaluate",
    "exact_key",
    "exact_match",
    "hash_match",
    "load_ground_truth",
    "load_renames",
    "load_snapshot",
    "locate_context",
    "location_match",
    "normalize_volatile_identifiers",
    "parse_refactorings",
    "parse_report",
    "region_change_kind",
    "rewrite_metadata",
    "run_tracking",
    "snippet_match",
    "solve_assignment",
    "track_sota",
    "track_statictracker",
    "warning_set_to_json",
]

"""End-to-end drivers wiring snapshots, diffs and the tracking pipelines."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Mapping

from .diffing import DiffResult, compute_diff
from .matching import (
    MatcherConfig,
    Mode,
    TrackResult,
    track_sota,
    track_statictracker,
)
from .model import WarningSet
from .refactorings import RefactoringSet
from .snapshots import RevisionPair, Snapshot, compute_revision_pair

__all__ = ["compute_pair_diffs", "run_tracking"]


def compute_pair_diffs(
    pair: RevisionPair,
    refs: RefactoringSet | None = None,
    jobs: int | None = None,
) -> dict[tuple[str, str], DiffResult]:
    """Diffs for every pre-file against its post-side counterpart.

    Deleted files are diffed against empty text so their hunks read as pure
    deletions.  File associations introduced by move refactorings are added on
    top of the rename map.
    """
    associations: list[tuple[str, str]] = []
    for pre_path in sorted(pair.pre.files):
        associations.append((pre_path, pair.post_path_for(pre_path)))
    for record in refs or ():
        before, after = record.before.file_path, record.after.file_path
        if before != after and before in pair.pre.files and after in pair.post.files:
            if (before, after) not in associations:
                associations.append((before, after))

    def one(assoc: tuple[str, str]) -> tuple[tuple[str, str], DiffResult]:
        pre_path, post_path = assoc
        pre_text = pair.pre.files.get(pre_path, "")
        post_text = pair.post.files.get(post_path, "")
        return assoc, compute_diff(pre_text, post_text, pre_path)

    workers = jobs if jobs and jobs > 0 else (os.cpu_count() or 1)
    if workers > 1 and len(associations) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            computed = list(pool.map(one, associations))
    else:
        computed = [one(assoc) for assoc in associations]
    return dict(computed)


def run_tracking(
    mode: Mode,
    pre_set: WarningSet,
    post_set: WarningSet,
    pre_snapshot: Snapshot,
    post_snapshot: Snapshot,
    renames: Mapping[str, str] | None = None,
    refs: RefactoringSet | None = None,
    cfg: MatcherConfig | None = None,
    jobs: int | None = None,
) -> TrackResult:
    """Run one tracking mode over a pair of snapshots and warning sets."""
    pair = compute_revision_pair(pre_snapshot, post_snapshot, dict(renames or {}))
    diffs = compute_pair_diffs(pair, refs, jobs)
    if mode is Mode.SOTA:
        return track_sota(pre_set, post_set, pair, diffs, cfg)
    return track_statictracker(pre_set, post_set, pair, diffs, refs, cfg)

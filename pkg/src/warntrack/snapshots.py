"""Source snapshots and the changed-file set that gates matching.

A snapshot is a plain mapping of relative forward-slash paths to text.  The
revision pair derives which files changed between two snapshots, honoring a
rename map so that renamed-but-identical files do not count as changed.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path, PurePosixPath

from .errors import ValidationError

logger = logging.getLogger(__name__)

DEFAULT_EXTENSIONS = (".java", ".scala")

__all__ = [
    "DEFAULT_EXTENSIONS",
    "RevisionPair",
    "Snapshot",
    "compute_revision_pair",
    "load_renames",
    "load_snapshot",
]


@dataclass(eq=False)
class Snapshot:
    """Immutable-by-convention view of one revision's source tree."""

    label: str
    files: dict[str, str] = field(default_factory=dict)
    skipped: tuple[str, ...] = ()

    def lines(self, path: str) -> list[str] | None:
        text = self.files.get(path)
        if text is None:
            return None
        return text.splitlines()

    def __contains__(self, path: str) -> bool:
        return path in self.files


def _normalize_rel_path(path: Path, root: Path) -> str:
    rel = PurePosixPath(*path.relative_to(root).parts)
    return str(rel)


def load_snapshot(
    root: str | Path,
    label: str,
    extensions: tuple[str, ...] = DEFAULT_EXTENSIONS,
) -> Snapshot:
    """Load all files under ``root`` matching the extension filter.

    Content is decoded as UTF-8 with replacement of invalid bytes.  Unreadable
    files are skipped with a logged warning; an unreadable root raises.
    """
    root = Path(root)
    if not root.is_dir():
        raise FileNotFoundError(f"snapshot root not found: {root}")

    files: dict[str, str] = {}
    skipped: list[str] = []
    for path in sorted(root.rglob("*")):
        if not path.is_file():
            continue
        if extensions and path.suffix not in extensions:
            continue
        rel = _normalize_rel_path(path, root)
        try:
            files[rel] = path.read_text(encoding="utf-8", errors="replace")
        except OSError as exc:
            logger.warning("skipping unreadable file %s: %s", path, exc)
            skipped.append(rel)
    return Snapshot(label=label, files=files, skipped=tuple(skipped))


def load_renames(path: str | Path) -> dict[str, str]:
    """Read a rename map from a JSON array of ``{pre_path, post_path}``."""
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(raw, list):
        raise ValidationError("renames file must be a JSON array")
    renames: dict[str, str] = {}
    for idx, entry in enumerate(raw):
        if not isinstance(entry, dict) or "pre_path" not in entry or "post_path" not in entry:
            raise ValidationError(f"rename entry #{idx} must have pre_path and post_path")
        renames[str(entry["pre_path"])] = str(entry["post_path"])
    return renames


@dataclass(eq=False)
class RevisionPair:
    """Pre and post snapshots plus the derived changed-file set."""

    pre: Snapshot
    post: Snapshot
    changed_files: frozenset[str]
    rename_map: dict[str, str]

    def post_path_for(self, pre_path: str) -> str:
        """The post-side path a pre-side file is compared against."""
        return self.rename_map.get(pre_path, pre_path)

    def is_deleted_file(self, pre_path: str) -> bool:
        return self.post_path_for(pre_path) not in self.post.files


def _augment_renames_with_identical_content(
    pre: Snapshot, post: Snapshot, renames: dict[str, str]
) -> dict[str, str]:
    """Add byte-identical pre-only/post-only file pairs to the rename map."""
    augmented = dict(renames)
    used_targets = set(augmented.values())
    pre_only = sorted(set(pre.files) - set(post.files) - set(augmented))
    post_only = sorted(set(post.files) - set(pre.files) - used_targets)
    by_content: dict[str, list[str]] = {}
    for path in post_only:
        by_content.setdefault(post.files[path], []).append(path)
    for path in pre_only:
        candidates = by_content.get(pre.files[path])
        if candidates:
            augmented[path] = candidates.pop(0)
    return augmented


def compute_revision_pair(
    pre: Snapshot,
    post: Snapshot,
    renames: dict[str, str] | None = None,
) -> RevisionPair:
    """Derive changed files between two snapshots.

    A path is changed when its content differs between revisions, or when it
    exists in only one snapshot and is not explained by the rename map.  Both
    sides of a rename with differing content are marked changed.
    """
    renames = dict(renames or {})
    if len(set(renames.values())) != len(renames):
        raise ValidationError("rename map must be injective")
    renames = _augment_renames_with_identical_content(pre, post, renames)

    changed: set[str] = set()
    rename_targets = set(renames.values())

    for path in set(pre.files) & set(post.files):
        if pre.files[path] != post.files[path]:
            changed.add(path)

    for pre_path, post_path in renames.items():
        pre_text = pre.files.get(pre_path)
        post_text = post.files.get(post_path)
        if pre_text is None or post_text is None:
            # Dangling rename entry: treat the existing side as changed.
            if pre_text is not None:
                changed.add(pre_path)
            if post_text is not None:
                changed.add(post_path)
        elif pre_text != post_text:
            changed.add(pre_path)
            changed.add(post_path)

    for path in set(pre.files) - set(post.files):
        if path not in renames:
            changed.add(path)
    for path in set(post.files) - set(pre.files):
        if path not in rename_targets:
            changed.add(path)

    return RevisionPair(
        pre=pre,
        post=post,
        changed_files=frozenset(changed),
        rename_map=renames,
    )

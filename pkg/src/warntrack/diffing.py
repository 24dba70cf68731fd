"""Line-level diffing and the position mapping used by location matching.

The diff is a minimal edit script over byte-exact lines (Myers).  It yields
two artifacts consumed elsewhere: hunks (insert/delete/replace ranges) and a
monotone partial bijection of unchanged lines between the revisions.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from enum import Enum

from .errors import ValidationError

__all__ = [
    "DiffResult",
    "Hunk",
    "HunkKind",
    "RegionChange",
    "Side",
    "anchor_offset",
    "compute_diff",
    "region_change_kind",
]


class HunkKind(str, Enum):
    INSERT = "insert"
    DELETE = "delete"
    REPLACE = "replace"


class Side(str, Enum):
    PRE = "pre"
    POST = "post"


class RegionChange(str, Enum):
    UNCHANGED = "unchanged"
    DELETIONS_ONLY = "deletions_only"
    MODIFIED = "modified"


@dataclass(frozen=True)
class Hunk:
    """One edited region, 1-based and inclusive where len > 0.

    A zero-length side records the position of the next line on that side,
    i.e. an insertion before pre line ``pre_start`` has ``pre_len == 0``.
    """

    pre_start: int
    pre_len: int
    post_start: int
    post_len: int
    kind: HunkKind

    @property
    def pre_end(self) -> int:
        return self.pre_start + self.pre_len - 1

    @property
    def post_end(self) -> int:
        return self.post_start + self.post_len - 1

    def intersects_pre(self, start: int, end: int) -> bool:
        """Whether this hunk touches the pre-side range [start, end].

        An insertion counts when its insertion point falls strictly inside the
        range; insertions at the leading edge or after the last line leave the
        range's own lines intact.
        """
        if self.pre_len == 0:
            return start < self.pre_start <= end
        return self.pre_start <= end and start <= self.pre_end


@dataclass(frozen=True)
class DiffResult:
    file_path: str
    hunks: tuple[Hunk, ...]
    line_map: dict[int, int]
    pre_line_count: int
    post_line_count: int

    def to_json_dict(self) -> dict:
        return {
            "file_path": self.file_path,
            "hunks": [
                {
                    "pre_start": h.pre_start,
                    "pre_len": h.pre_len,
                    "post_start": h.post_start,
                    "post_len": h.post_len,
                    "kind": h.kind.value,
                }
                for h in self.hunks
            ],
            "line_map": {str(k): v for k, v in sorted(self.line_map.items())},
        }


def _lcs_pairs(a: list[str], b: list[str]) -> list[tuple[int, int]]:
    """Matched (i, j) index pairs of a longest common subsequence.

    Greedy forward search over edit distance d; the first path reaching the
    end is minimal, so the returned matches realize a minimal edit script.
    """
    n, m = len(a), len(b)
    if n == 0 or m == 0:
        return []
    total = n + m
    frontier = [0] * (2 * total + 1)
    chains: list[tuple | None] = [None] * (2 * total + 1)
    for d in range(total + 1):
        for k in range(-d, d + 1, 2):
            idx = total + k
            if k == -d or (k != d and frontier[idx - 1] < frontier[idx + 1]):
                x = frontier[idx + 1]
                chain = chains[idx + 1]
            else:
                x = frontier[idx - 1] + 1
                chain = chains[idx - 1]
            y = x - k
            while x < n and y < m and a[x] == b[y]:
                chain = ((x, y), chain)
                x += 1
                y += 1
            if x >= n and y >= m:
                out = []
                while chain:
                    out.append(chain[0])
                    chain = chain[1]
                out.reverse()
                return out
            frontier[idx] = x
            chains[idx] = chain
    return []


def _matched_indices(pre_lines: list[str], post_lines: list[str]) -> list[tuple[int, int]]:
    n, m = len(pre_lines), len(post_lines)
    prefix = 0
    while prefix < n and prefix < m and pre_lines[prefix] == post_lines[prefix]:
        prefix += 1
    suffix = 0
    while (
        suffix < n - prefix
        and suffix < m - prefix
        and pre_lines[n - 1 - suffix] == post_lines[m - 1 - suffix]
    ):
        suffix += 1

    middle = _lcs_pairs(pre_lines[prefix : n - suffix], post_lines[prefix : m - suffix])
    matches = [(i, i) for i in range(prefix)]
    matches.extend((i + prefix, j + prefix) for i, j in middle)
    matches.extend((n - suffix + i, m - suffix + i) for i in range(suffix))
    return matches


def compute_diff(pre_text: str, post_text: str, file_path: str) -> DiffResult:
    """Minimal line diff of two texts with the unchanged-line mapping."""
    pre_lines = pre_text.splitlines()
    post_lines = post_text.splitlines()

    if pre_lines == post_lines:
        return DiffResult(
            file_path=file_path,
            hunks=(),
            line_map={i: i for i in range(1, len(pre_lines) + 1)},
            pre_line_count=len(pre_lines),
            post_line_count=len(post_lines),
        )

    matches = _matched_indices(pre_lines, post_lines)
    line_map = {i + 1: j + 1 for i, j in matches}

    hunks: list[Hunk] = []
    boundary = matches + [(len(pre_lines), len(post_lines))]
    prev_i, prev_j = -1, -1
    for i, j in boundary:
        pre_len = i - prev_i - 1
        post_len = j - prev_j - 1
        if pre_len or post_len:
            if pre_len and post_len:
                kind = HunkKind.REPLACE
            elif pre_len:
                kind = HunkKind.DELETE
            else:
                kind = HunkKind.INSERT
            hunks.append(
                Hunk(
                    pre_start=prev_i + 2,
                    pre_len=pre_len,
                    post_start=prev_j + 2,
                    post_len=post_len,
                    kind=kind,
                )
            )
        prev_i, prev_j = i, j

    return DiffResult(
        file_path=file_path,
        hunks=tuple(hunks),
        line_map=line_map,
        pre_line_count=len(pre_lines),
        post_line_count=len(post_lines),
    )


def anchor_offset(diff: DiffResult, line: int, side: Side) -> tuple[int, int]:
    """Offset of ``line`` from the nearest hunk start at or before it.

    When the line precedes every hunk (or there are none), the anchor is line 1
    and the offset degenerates to the absolute position minus one.
    """
    count = diff.pre_line_count if side is Side.PRE else diff.post_line_count
    if line < 1 or line > count:
        raise ValidationError(f"line {line} out of range 1..{count} on {side.value} side")

    starts = [
        h.pre_start if side is Side.PRE else h.post_start for h in diff.hunks
    ]
    pos = bisect.bisect_right(starts, line)
    anchor = starts[pos - 1] if pos else 1
    return anchor, line - anchor


def region_change_kind(diff: DiffResult, pre_range: tuple[int, int]) -> RegionChange:
    """Classify how the hunks touch a pre-side line range."""
    start, end = pre_range
    intersecting = [h for h in diff.hunks if h.intersects_pre(start, end)]
    if not intersecting:
        return RegionChange.UNCHANGED
    if all(h.kind is HunkKind.DELETE for h in intersecting):
        return RegionChange.DELETIONS_ONLY
    return RegionChange.MODIFIED


def apply_hunks(pre_text: str, diff: DiffResult, post_text: str) -> list[str]:
    """Reconstruct the post line sequence from pre lines plus the hunks.

    Used by the round-trip property tests; ``post_text`` supplies inserted
    content since hunks store only positions.
    """
    pre_lines = pre_text.splitlines()
    post_lines = post_text.splitlines()
    out: list[str] = []
    pre_pos = 1
    for h in diff.hunks:
        while pre_pos < h.pre_start:
            out.append(pre_lines[pre_pos - 1])
            pre_pos += 1
        out.extend(post_lines[h.post_start - 1 : h.post_start - 1 + h.post_len])
        pre_pos += h.pre_len
    while pre_pos <= len(pre_lines):
        out.append(pre_lines[pre_pos - 1])
        pre_pos += 1
    return out

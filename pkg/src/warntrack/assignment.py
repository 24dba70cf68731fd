"""Candidate matrix and the maximum-weight assignment over it.

Weights count how many matching strategies accepted a pre/post pair (0, 1 or
2); zero cells are non-edges.  The solver maximizes total weight, then breaks
ties by minimal total start-line distance, then by lexicographic id order, so
repeated runs produce identical matchings.
"""

from __future__ import annotations

from dataclasses import dataclass

from scipy.optimize import linear_sum_assignment

__all__ = ["CandidateMatrix", "solve_assignment"]


@dataclass(frozen=True)
class CandidateMatrix:
    """Dense weight matrix over (pre warning x post warning) pairs.

    ``pre_lines``/``post_lines`` carry each warning's start line for the
    distance tiebreak; they may be omitted when distances are irrelevant.
    """

    pre_ids: tuple[str, ...]
    post_ids: tuple[str, ...]
    weights: tuple[tuple[int, ...], ...]
    pre_lines: tuple[int, ...] | None = None
    post_lines: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        for row in self.weights:
            for value in row:
                if value not in (0, 1, 2):
                    raise ValueError(f"weights must be 0, 1 or 2, got {value}")

    def weight(self, i: int, j: int) -> int:
        return self.weights[i][j]


def _distance(m: CandidateMatrix, i: int, j: int) -> int:
    if m.pre_lines is None or m.post_lines is None:
        return 0
    return abs(m.pre_lines[i] - m.post_lines[j])


def _components(edges: list[tuple[int, int]]) -> list[tuple[list[int], list[int]]]:
    """Connected components of the bipartite graph induced by positive cells."""
    row_adj: dict[int, list[int]] = {}
    col_adj: dict[int, list[int]] = {}
    for i, j in edges:
        row_adj.setdefault(i, []).append(j)
        col_adj.setdefault(j, []).append(i)

    seen_rows: set[int] = set()
    seen_cols: set[int] = set()
    components = []
    for start in sorted(row_adj):
        if start in seen_rows:
            continue
        rows, cols = [], []
        stack: list[tuple[str, int]] = [("r", start)]
        while stack:
            side, node = stack.pop()
            if side == "r":
                if node in seen_rows:
                    continue
                seen_rows.add(node)
                rows.append(node)
                stack.extend(("c", j) for j in row_adj.get(node, ()))
            else:
                if node in seen_cols:
                    continue
                seen_cols.add(node)
                cols.append(node)
                stack.extend(("r", i) for i in col_adj.get(node, ()))
        components.append((sorted(rows), sorted(cols)))
    return components


class _ComponentSolver:
    """Exact bi-criteria assignment on one component.

    Cell values encode (weight, -distance) lexicographically as integers; the
    LAP kernel supplies optimal totals, and a greedy pass over id-sorted edges
    pins the unique lexicographically-least optimal matching.
    """

    def __init__(self, m: CandidateMatrix, rows: list[int], cols: list[int]):
        self.rows = rows
        self.cols = cols
        max_dist = 0
        for i in rows:
            for j in cols:
                if m.weight(i, j) > 0:
                    max_dist = max(max_dist, _distance(m, i, j))
        scale = min(len(rows), len(cols)) * max_dist + 1
        # Integer values stay well under 2**53, so the float64 LAP is exact.
        self.values = [
            [
                m.weight(i, j) * scale - _distance(m, i, j) if m.weight(i, j) > 0 else 0
                for j in cols
            ]
            for i in rows
        ]
        self.edges = sorted(
            (
                (m.pre_ids[i], m.post_ids[j], ri, ci)
                for ri, i in enumerate(rows)
                for ci, j in enumerate(cols)
                if m.weight(i, j) > 0
            ),
        )

    def _optimum(self, free_rows: list[int], free_cols: list[int]) -> int:
        if not free_rows or not free_cols:
            return 0
        sub = [[self.values[r][c] for c in free_cols] for r in free_rows]
        row_ind, col_ind = linear_sum_assignment(sub, maximize=True)
        return sum(sub[r][c] for r, c in zip(row_ind, col_ind))

    def solve(self) -> list[tuple[int, int]]:
        all_rows = list(range(len(self.rows)))
        all_cols = list(range(len(self.cols)))
        target = self._optimum(all_rows, all_cols)

        chosen: list[tuple[int, int]] = []
        used_rows: set[int] = set()
        used_cols: set[int] = set()
        forced_total = 0
        for _, _, ri, ci in self.edges:
            if ri in used_rows or ci in used_cols:
                continue
            trial = forced_total + self.values[ri][ci]
            free_rows = [r for r in all_rows if r not in used_rows and r != ri]
            free_cols = [c for c in all_cols if c not in used_cols and c != ci]
            if trial + self._optimum(free_rows, free_cols) == target:
                chosen.append((self.rows[ri], self.cols[ci]))
                used_rows.add(ri)
                used_cols.add(ci)
                forced_total = trial
        return chosen


def solve_assignment(m: CandidateMatrix) -> list[tuple[int, int]]:
    """Deterministic maximum-weight matching over positive cells.

    Returns (row, column) index pairs.  Zero-weight cells are never matched.
    Among maximum-weight matchings the solution minimizes the total start-line
    distance, and remaining ties resolve to the lexicographically smallest
    (pre id, post id) pair sequence.
    """
    n_rows = len(m.pre_ids)
    n_cols = len(m.post_ids)
    edges = [
        (i, j) for i in range(n_rows) for j in range(n_cols) if m.weight(i, j) > 0
    ]
    if not edges:
        return []

    pairs: list[tuple[int, int]] = []
    for rows, cols in _components(edges):
        pairs.extend(_ComponentSolver(m, rows, cols).solve())
    pairs.sort(key=lambda ij: (m.pre_ids[ij[0]], m.post_ids[ij[1]]))
    return pairs

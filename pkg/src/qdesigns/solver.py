"""Exact 0/1 solutions of the Kramer-Mesner system A x = lambda * 1.

Depth-first search over columns.  A branch is cut when some row already
exceeds lambda, or when the columns still undecided cannot lift some row up
to lambda.  Columns are visited by descending maximum entry, ties in label
order.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import product

from ._backend import kernels
from .incidence import KMMatrix


@dataclass
class SolveRequest:
    matrix: KMMatrix | list[list[int]]
    lam: int
    max_solutions: int | None = None
    time_limit: float | None = None

    def __post_init__(self):
        if self.lam < 0:
            raise ValueError("lambda must be nonnegative")
        if self.max_solutions is not None and self.max_solutions < 1:
            raise ValueError("max_solutions must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time_limit must be positive")


@dataclass
class SolveResult:
    solutions: list[tuple[int, ...]]
    status: str  # complete | truncated | timeout
    ncols: int = 0
    elapsed: float = 0.0
    meta: dict = field(default_factory=dict)

    def vectors(self) -> list[list[int]]:
        out = []
        for sol in self.solutions:
            x = [0] * self.ncols
            for j in sol:
                x[j] = 1
            out.append(x)
        return out


def _rows(A) -> list[list[int]]:
    return A.entries if isinstance(A, KMMatrix) else [list(r) for r in A]


def column_order(rows: list[list[int]]) -> list[int]:
    ncols = len(rows[0]) if rows else 0
    colmax = [max((r[j] for r in rows), default=0) for j in range(ncols)]
    return sorted(range(ncols), key=lambda j: (-colmax[j], j))


def solve(req: SolveRequest) -> SolveResult:
    """All (or up to ``max_solutions``) 0/1 vectors x with A x = lambda * 1.

    Solutions are column-index tuples, sorted.  With a cap the returned set is
    the first solutions met in search order.
    """
    rows = _rows(req.matrix)
    if any(x < 0 for r in rows for x in r):
        raise ValueError("entries must be nonnegative")
    ncols = len(rows[0]) if rows else (len(req.matrix.col_labels) if isinstance(req.matrix, KMMatrix) else 0)
    order = column_order(rows)
    cols = [[r[j] for r in rows] for j in order]
    start = time.monotonic()
    deadline = start + req.time_limit if req.time_limit else 0.0
    cap = req.max_solutions if req.max_solutions is not None else -1
    raw, status = kernels.dfs_solve(cols, len(rows), req.lam, cap, deadline)
    sols = sorted(tuple(sorted(order[j] for j in s)) for s in raw)
    return SolveResult(sols, status, ncols, time.monotonic() - start)


def check(A, x, lam: int) -> bool:
    """Exact residual test A x == lambda * 1 for a 0/1 vector x."""
    rows = _rows(A)
    ncols = len(rows[0]) if rows else len(x)
    if len(x) != ncols:
        raise ValueError(f"selection has length {len(x)}, matrix has {ncols} columns")
    return all(sum(a * b for a, b in zip(r, x)) == lam for r in rows)


def brute_force(A, lam: int) -> list[tuple[int, ...]]:
    """Exhaustive 2^ncols enumeration; the oracle for small instances."""
    rows = _rows(A)
    ncols = len(rows[0]) if rows else 0
    out = []
    for x in product((0, 1), repeat=ncols):
        if check(rows, x, lam):
            out.append(tuple(j for j in range(ncols) if x[j]))
    return sorted(out)

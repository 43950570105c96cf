"""Kramer-Mesner incidence matrices A_{t,k}^G and their concatenations."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from ._backend import kernels
from .errors import DEFAULT_GUARD
from .gf import FieldSpec
from .groups import GroupGens, borel_group, orbits
from .linalg import Matrix, Subspace, canonicalize
from .subspaces import (
    PivotSet,
    enum_class_members,
    enum_pivot_sets,
    standard_rep,
    star_count,
    subspace_coordinates,
)


@dataclass
class KMMatrix:
    """Orbit incidence matrix with labelled rows and columns.

    ``row_labels`` are t-orbit representatives, ``col_labels`` are
    ``(k, representative)`` pairs and ``col_sizes`` the matching orbit sizes.
    """

    group: dict
    n: int
    q: int
    t: int
    K: tuple[int, ...]
    row_labels: list[Subspace]
    col_labels: list[tuple[int, Subspace]]
    entries: list[list[int]]
    col_sizes: list[int] = field(default_factory=list)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_labels), len(self.col_labels)

    def row_sums(self, cols=None) -> list[int]:
        idx = range(len(self.col_labels)) if cols is None else list(cols)
        return [sum(row[j] for j in idx) for row in self.entries]

    def block_row_sums(self, k: int) -> list[int]:
        return self.row_sums(j for j, (kk, _) in enumerate(self.col_labels) if kk == k)

    def columns(self) -> list[list[int]]:
        return [list(c) for c in zip(*self.entries)] if self.entries else [[] for _ in self.col_labels]

    def submatrix(self, rows=None, cols=None) -> KMMatrix:
        rows = list(range(len(self.row_labels))) if rows is None else list(rows)
        cols = list(range(len(self.col_labels))) if cols is None else list(cols)
        return KMMatrix(
            self.group, self.n, self.q, self.t, self.K,
            [self.row_labels[i] for i in rows],
            [self.col_labels[j] for j in cols],
            [[self.entries[i][j] for j in cols] for i in rows],
            [self.col_sizes[j] for j in cols] if self.col_sizes else [],
        )

    def row_index(self, pivots: PivotSet) -> int:
        return next(i for i, s in enumerate(self.row_labels) if s.pivots == tuple(pivots))

    def col_index(self, pivots: PivotSet) -> int:
        return next(j for j, (_, s) in enumerate(self.col_labels) if s.pivots == tuple(pivots))

    # --- export --------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "n": self.n,
            "q": self.q,
            "t": self.t,
            "K": list(self.K),
            "rows": [label_json(s) for s in self.row_labels],
            "cols": [{"k": k, **label_json(s)} for k, s in self.col_labels],
            "col_sizes": self.col_sizes,
            "entries": self.entries,
        }

    @classmethod
    def from_json(cls, data: dict, F: FieldSpec) -> KMMatrix:
        n = data["n"]
        rows = [label_from_json(d, F, n) for d in data["rows"]]
        cols = [(d["k"], label_from_json(d, F, n)) for d in data["cols"]]
        return cls(data["group"], n, data["q"], data["t"], tuple(data["K"]), rows, cols,
                   [list(r) for r in data["entries"]], list(data.get("col_sizes", [])))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + [label_str(s) for _, s in self.col_labels])
        for s, row in zip(self.row_labels, self.entries):
            w.writerow([label_str(s)] + row)
        return buf.getvalue()

    def to_text(self, split_rows: int | None = None, split_cols: int | None = None) -> str:
        """Aligned rendering with blanks for zeros and optional block rules."""
        width = max([len(str(x)) for row in self.entries for x in row] + [1])
        lines = []
        for i, row in enumerate(self.entries):
            if split_rows is not None and i == split_rows:
                lines.append("-" * len(lines[-1]) if lines else "")
            cells = []
            for j, x in enumerate(row):
                if split_cols is not None and j == split_cols:
                    cells.append("|")
                cells.append(str(x).rjust(width) if x else " " * width)
            lines.append(" ".join(cells).rstrip())
        return "\n".join(lines) + "\n"


def label_json(s: Subspace) -> dict:
    if s.canon == standard_rep(s.pivots, s.field, s.n).canon:
        return {"pivots": list(s.pivots)}
    return {"matrix": s.matrix().to_rows()}


def label_from_json(d: dict, F: FieldSpec, n: int) -> Subspace:
    if "pivots" in d:
        return standard_rep(tuple(d["pivots"]), F, n)
    rows = d["matrix"]
    k = len(rows[0]) if rows else 0
    return canonicalize(Matrix(F, n, k, bytes(x for r in rows for x in r)))


def label_str(s: Subspace) -> str:
    if s.canon == standard_rep(s.pivots, s.field, s.n).canon:
        return "E{" + ",".join(map(str, s.pivots)) + "}"
    return "[" + ";".join(" ".join(map(str, r)) for r in s.matrix().to_rows()) + "]"


def km_matrix(g: GroupGens, t: int, k: int, guard: int = DEFAULT_GUARD) -> KMMatrix:
    """A_{t,k}^G by orbit enumeration.

    Each column orbit is walked once; for every member the t-subspaces it
    contains are generated and matched against the row representatives.
    """
    if not 0 <= t <= k <= g.n:
        raise ValueError(f"need 0 <= t <= k <= n, got t={t}, k={k}, n={g.n}")
    F, n = g.field, g.n
    row_reps = [rep for rep, _ in orbits(g, t, guard)]
    row_of = {s.canon: i for i, s in enumerate(row_reps)}
    coords = subspace_coordinates(F, k, t)
    col_orbits = orbits(g, k, guard)
    entries = [[0] * len(col_orbits) for _ in row_reps]
    for j, (_, members) in enumerate(col_orbits):
        for s in members:
            for key in kernels.mul_canon_many(s.canon, coords, n, k, t, F.tables):
                i = row_of.get(key)
                if i is not None:
                    entries[i][j] += 1
    return KMMatrix(g.descriptor(), n, F.q, t, (k,), row_reps,
                    [(k, rep) for rep, _ in col_orbits], entries, [len(m) for _, m in col_orbits])


def km_concat(g: GroupGens, t: int, K, guard: int = DEFAULT_GUARD, borel_fast: bool = True) -> KMMatrix:
    """A_{t,K}^G: the blocks A_{t,k}^G side by side in K order."""
    K = tuple(K)
    blocks = [
        borel_km_matrix(g.field, g.n, t, k) if g.is_borel and borel_fast else km_matrix(g, t, k, guard)
        for k in K
    ]
    first = blocks[0]
    return KMMatrix(
        first.group, first.n, first.q, t, K, first.row_labels,
        [c for b in blocks for c in b.col_labels],
        [sum((b.entries[i] for b in blocks), []) for i in range(len(first.row_labels))],
        [s for b in blocks for s in b.col_sizes],
    )


def _contains_standard(member: Subspace, col_of_tau) -> bool:
    # E(tau) lies in a canonical subspace iff every column whose pivot is in
    # tau is the bare unit vector
    k, canon = member.k, member.canon
    for j in col_of_tau:
        if any(canon[r * k + j] for r in range(member.pivots[j] - 1)):
            return False
    return True


def borel_km_matrix(F: FieldSpec, n: int, t: int, k: int) -> KMMatrix:
    """A_{t,k} for the Borel group via echelon classes.

    Entries vanish unless tau is a subset of pi; otherwise the members of the
    class of pi containing E(tau) are counted directly.
    """
    if not 0 <= t <= k <= n:
        raise ValueError(f"need 0 <= t <= k <= n, got t={t}, k={k}, n={n}")
    taus = enum_pivot_sets(n, t)
    pis = enum_pivot_sets(n, k)
    entries = [[0] * len(pis) for _ in taus]
    for j, pi in enumerate(pis):
        subs = [(i, [pi.index(x) for x in tau]) for i, tau in enumerate(taus) if set(tau) <= set(pi)]
        for member in enum_class_members(pi, F, n):
            for i, cols in subs:
                if _contains_standard(member, cols):
                    entries[i][j] += 1
    return KMMatrix(
        borel_group(F, n).descriptor(), n, F.q, t, (k,),
        [standard_rep(tau, F, n) for tau in taus],
        [(k, standard_rep(pi, F, n)) for pi in pis],
        entries,
        [F.q ** star_count(pi) for pi in pis],
    )


def borel_entry(tau: PivotSet, pi: PivotSet, q: int) -> int:
    """Closed form of a Borel incidence entry: q to the star count of the
    columns of pi whose pivot is not in tau (0 unless tau is inside pi)."""
    if not set(tau) <= set(pi):
        return 0
    return q ** sum(p - j for j, p in enumerate(pi, 1) if p not in tau)


def q1_specialize(m: KMMatrix) -> KMMatrix:
    """Replace every nonzero entry of a Borel matrix by 1."""
    if m.group.get("kind") != "borel":
        raise ValueError("q = 1 specialization is defined for Borel matrices only")
    out = m.submatrix()
    out.entries = [[int(x != 0) for x in row] for row in m.entries]
    out.col_sizes = [1] * len(m.col_labels)
    return out


def subset_incidence(n: int, t: int, k: int) -> list[list[int]]:
    """Containment matrix between t-subsets and k-subsets of {1..n}."""
    return [[int(set(a) <= set(b)) for b in combinations(range(1, n + 1), k)]
            for a in combinations(range(1, n + 1), t)]


def family_order(n: int, t: int) -> tuple[list[PivotSet], list[PivotSet]]:
    """Row and column order used for A_{t,{t+1,t+2}} of the Borel group.

    Rows: t-subsets of {1..n-1}, then t-subsets containing n.  Columns:
    (t+1)-subsets containing n, (t+2)-subsets of {1..n-1}, then the rest.
    """
    base = range(1, n)
    rows = list(combinations(base, t)) + [tau + (n,) for tau in combinations(base, t - 1)]
    first = [tau + (n,) for tau in combinations(base, t)]
    second = list(combinations(base, t + 2))
    chosen = set(first) | set(second)
    rest = [pi for kk in (t + 1, t + 2) for pi in combinations(range(1, n + 1), kk) if pi not in chosen]
    return rows, first + second + rest


def borel_family_matrix(F: FieldSpec, n: int, t: int, selected_only: bool = True) -> KMMatrix:
    """A_{t,{t+1,t+2}} of the Borel group in block order.

    With ``selected_only`` the columns are cut to the first two blocks, the
    orbits chosen by the family construction.
    """
    full = km_concat(borel_group(F, n), t, (t + 1, t + 2))
    rows, cols = family_order(n, t)
    if selected_only:
        cols = cols[: _n_selected(n, t)]
    return full.submatrix([full.row_index(r) for r in rows], [full.col_index(c) for c in cols])


def _n_selected(n: int, t: int) -> int:
    return comb(n - 1, t) + comb(n - 1, t + 2)


def borel_block_form(F: FieldSpec, n: int, t: int) -> dict[str, list[list[int]]]:
    """Cut the block-ordered A_{t,{t+1,t+2}} into its named blocks."""
    m = borel_family_matrix(F, n, t, selected_only=False)
    r1 = comb(n - 1, t)
    c1, c2 = comb(n - 1, t), comb(n - 1, t) + comb(n - 1, t + 2)
    E = m.entries
    return {
        "upper_left": [row[:c1] for row in E[:r1]],
        "upper_middle": [row[c1:c2] for row in E[:r1]],
        "lower_left": [row[:c1] for row in E[r1:]],
        "lower_middle": [row[c1:c2] for row in E[r1:]],
        "right": [row[c2:] for row in E],
    }

"""Matrices and subspaces over GF(q).

Subspaces are column spaces.  A k-subspace of F_q^n is stored through its
canonical generator matrix: the n x k column-echelon matrix whose column j has
its last nonzero entry, a 1, in pivot row p_j (p_1 < ... < p_k), and which is
zero in the pivot rows of all other columns.  Row indices in the public
interface are 1-based.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from dataclasses import field as dc_field

from ._backend import kernels
from .gf import FieldSpec


@dataclass(frozen=True)
class Matrix:
    """Dense row-major matrix over a finite field."""

    field: FieldSpec = dc_field(repr=False)
    rows: int
    cols: int
    entries: bytes

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")
        if self.entries and max(self.entries) >= self.field.q:
            raise ValueError("entry outside the field")

    @classmethod
    def from_rows(cls, F: FieldSpec, rows) -> Matrix:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(F, len(rows), ncols, bytes(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, F: FieldSpec, columns) -> Matrix:
        columns = [list(c) for c in columns]
        return cls.from_rows(F, zip(*columns)) if columns else cls(F, 0, 0, b"")

    @classmethod
    def identity(cls, F: FieldSpec, n: int) -> Matrix:
        return cls(F, n, n, bytes(int(i == j) for i in range(n) for j in range(n)))

    def __getitem__(self, rc) -> int:
        r, c = rc
        return self.entries[r * self.cols + c]

    def row(self, r: int) -> list[int]:
        return list(self.entries[r * self.cols:(r + 1) * self.cols])

    def column(self, c: int) -> list[int]:
        return list(self.entries[c::self.cols])

    def to_rows(self) -> list[list[int]]:
        return [self.row(r) for r in range(self.rows)]

    def transpose(self) -> Matrix:
        return Matrix.from_rows(self.field, [self.column(c) for c in range(self.cols)])

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        prod = kernels.matmul(self.entries, other.entries, self.rows, self.cols, other.cols, self.field.tables)
        return Matrix(self.field, self.rows, other.cols, prod)

    def __pow__(self, e: int) -> Matrix:
        if e < 0:
            return self.inverse() ** (-e)
        result = Matrix.identity(self.field, self.rows)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def rank(self) -> int:
        return len(_row_reduce(self)[1])

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inverse(self) -> Matrix:
        if self.rows != self.cols:
            raise ValueError("only square matrices are invertible")
        n, F = self.rows, self.field
        aug = Matrix.from_rows(F, [self.row(i) + [int(i == j) for j in range(n)] for i in range(n)])
        red, piv = _row_reduce(aug)
        if piv[:n] != list(range(n)):
            raise ValueError("matrix is singular")
        return Matrix.from_rows(F, [row[n:] for row in red])

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in self.row(r)) for r in range(self.rows))


def _row_reduce(M: Matrix):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    F = M.field
    rows = M.to_rows()
    piv: list[int] = []
    r = 0
    for c in range(M.cols):
        p = next((i for i in range(r, M.rows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        s = F.inv(rows[r][c])
        rows[r] = [F.mul(s, x) for x in rows[r]]
        for i in range(M.rows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
        if r == M.rows:
            break
    return rows, piv


@dataclass(frozen=True)
class Subspace:
    """A k-subspace of F_q^n keyed by its canonical generator matrix."""

    field: FieldSpec = dc_field(repr=False, compare=False)
    n: int
    k: int
    canon: bytes = dc_field(repr=False)
    pivots: tuple[int, ...] = dc_field(compare=False)

    @property
    def key(self) -> bytes:
        return self.canon

    def matrix(self) -> Matrix:
        return Matrix(self.field, self.n, self.k, self.canon)

    def columns(self) -> list[list[int]]:
        return [list(self.canon[j::self.k]) for j in range(self.k)] if self.k else []

    def __str__(self) -> str:
        return str(self.matrix())


def _subspace(F: FieldSpec, n: int, k: int, canon: bytes, piv0) -> Subspace:
    return Subspace(F, n, k, canon, tuple(p + 1 for p in piv0))


def canonicalize(g: Matrix) -> Subspace:
    """Column span of ``g`` (n x k, rank k) as a Subspace."""
    canon, piv = kernels.canon(g.entries, g.rows, g.cols, g.field.tables)
    return _subspace(g.field, g.rows, g.cols, canon, piv)


def subspace_from_columns(F: FieldSpec, columns) -> Subspace:
    return canonicalize(Matrix.from_columns(F, columns))


def apply(alpha: Matrix, s: Subspace) -> Subspace:
    """The image ``alpha S`` of s under left multiplication."""
    if alpha.rows != alpha.cols or alpha.cols != s.n:
        raise ValueError("dimension mismatch between group element and subspace")
    try:
        canon, piv = kernels.mul_canon(alpha.entries, s.canon, s.n, s.n, s.k, s.field.tables)
    except ValueError:
        raise ValueError("alpha is singular") from None
    return _subspace(s.field, s.n, s.k, canon, piv)


def contains(t: Subspace, s: Subspace) -> bool:
    """True iff t is a subspace of s.

    Each column v of t is solved against the canonical matrix of s: the
    coefficients are forced to be v's entries in the pivot rows of s, so v lies
    in s exactly when that combination reproduces v.
    """
    if t.n != s.n or t.field.q != s.field.q:
        raise ValueError("subspaces live in different ambient spaces")
    if t.k > s.k:
        return False
    F, k = s.field, s.k
    cols = s.columns()
    for v in t.columns():
        w = list(v)
        for j, p in enumerate(s.pivots):
            c = w[p - 1]
            if c:
                nc = F.neg(c)
                w = [F.add(x, F.mul(nc, y)) for x, y in zip(w, cols[j])]
        if any(w):
            return False
    return True


def is_borel(alpha: Matrix) -> bool:
    """Invertible upper triangular?"""
    if alpha.rows != alpha.cols:
        return False
    n = alpha.rows
    return all(alpha[i, i] for i in range(n)) and not any(alpha[i, j] for i in range(n) for j in range(i))


def random_borel(F: FieldSpec, n: int, rng: random.Random) -> Matrix:
    rows = [[0] * i + [rng.randrange(1, F.q)] + [rng.randrange(F.q) for _ in range(n - i - 1)] for i in range(n)]
    return Matrix.from_rows(F, rows)


def random_invertible(F: FieldSpec, n: int, rng: random.Random) -> Matrix:
    while True:
        M = Matrix(F, n, n, bytes(rng.randrange(F.q) for _ in range(n * n)))
        if M.is_invertible():
            return M


def random_subspace(F: FieldSpec, n: int, k: int, rng: random.Random) -> Subspace:
    while True:
        G = Matrix(F, n, k, bytes(rng.randrange(F.q) for _ in range(n * k)))
        if G.rank() == k:
            return canonicalize(G)


def format_matrix(M: Matrix) -> str:
    """Plain-text form: a ``rows cols`` header, then one line per row."""
    return f"{M.rows} {M.cols}\n" + "".join(" ".join(map(str, M.row(r))) + "\n" for r in range(M.rows))


def parse_matrix(F: FieldSpec, text: str) -> Matrix:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    rows, cols = map(int, lines[0])
    body = [[int(x) for x in ln] for ln in lines[1:]]
    if len(body) != rows or any(len(r) != cols for r in body):
        raise ValueError(f"expected a {rows}x{cols} matrix")
    return Matrix.from_rows(F, body) if rows else Matrix(F, 0, cols, b"")

"""Matrix groups acting on subspaces: orbits and transversals.

Groups are given by generators.  The Borel group (invertible upper triangular
matrices) is symbolic: its orbits are the echelon classes, so no generators
are stored and no search is needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ._backend import kernels
from .errors import DEFAULT_GUARD, GuardError
from .gf import FieldSpec, make_field, primitive_poly
from .linalg import Matrix, Subspace
from .subspaces import class_size, enum_class_members, enum_pivot_sets, enum_subspaces, qbinom, standard_rep

KINDS = ("borel", "singer", "singer_frobenius", "matrices", "trivial")


@dataclass(frozen=True)
class GroupGens:
    field: FieldSpec
    n: int
    gens: tuple[Matrix, ...]
    label: str
    poly: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.label == "borel" and self.gens:
            raise ValueError("the Borel group is symbolic and takes no generators")
        for g in self.gens:
            if (g.rows, g.cols) != (self.n, self.n) or not g.is_invertible():
                raise ValueError(f"generator is not an invertible {self.n}x{self.n} matrix")

    @property
    def is_borel(self) -> bool:
        return self.label == "borel"

    def descriptor(self) -> dict:
        """JSON-ready group descriptor."""
        d: dict = {"kind": self.label}
        if self.label == "matrices":
            d["matrices"] = [g.to_rows() for g in self.gens]
        if self.poly is not None:
            d["poly"] = list(self.poly)
        return d


def companion_matrix(F: FieldSpec, poly) -> Matrix:
    """Matrix of multiplication by x on F[x]/(poly) in the basis 1, x, ..., x^(n-1)."""
    n = len(poly) - 1
    rows = [[0] * n for _ in range(n)]
    for j in range(n - 1):
        rows[j + 1][j] = 1
    for i in range(n):
        rows[i][n - 1] = F.neg(poly[i])
    return Matrix.from_rows(F, rows)


def singer_frobenius_gens(F: FieldSpec, n: int, poly=None, overrides=None) -> tuple[Matrix, Matrix]:
    """Singer cycle sigma and Frobenius phi for the given primitive polynomial.

    sigma is the companion matrix; phi is x -> x^q on F_{q^n}, whose column j
    holds the coordinates of x^(q*j).
    """
    poly = tuple(poly) if poly is not None else primitive_poly(F, n, overrides)
    sigma = companion_matrix(F, poly)
    sq = sigma ** F.q
    cols = []
    cur = Matrix.identity(F, n)
    for _ in range(n):
        cols.append(cur.column(0))
        cur = sq @ cur
    phi = Matrix.from_columns(F, cols)
    return sigma, phi


def borel_group(F: FieldSpec, n: int) -> GroupGens:
    return GroupGens(F, n, (), "borel")


def trivial_group(F: FieldSpec, n: int) -> GroupGens:
    return GroupGens(F, n, (Matrix.identity(F, n),), "trivial")


def singer_group(F: FieldSpec, n: int, poly=None, overrides=None) -> GroupGens:
    poly = tuple(poly) if poly is not None else primitive_poly(F, n, overrides)
    sigma, _ = singer_frobenius_gens(F, n, poly)
    return GroupGens(F, n, (sigma,), "singer", poly)


def singer_frobenius_group(F: FieldSpec, n: int, poly=None, overrides=None) -> GroupGens:
    poly = tuple(poly) if poly is not None else primitive_poly(F, n, overrides)
    return GroupGens(F, n, singer_frobenius_gens(F, n, poly), "singer_frobenius", poly)


def matrix_group(F: FieldSpec, n: int, matrices) -> GroupGens:
    gens = tuple(m if isinstance(m, Matrix) else Matrix.from_rows(F, m) for m in matrices)
    return GroupGens(F, n, gens, "matrices")


def group_from_descriptor(desc: dict, F: FieldSpec, n: int, overrides=None) -> GroupGens:
    kind = desc.get("kind")
    poly = desc.get("poly")
    if kind == "borel":
        return borel_group(F, n)
    if kind == "trivial":
        return trivial_group(F, n)
    if kind == "singer":
        return singer_group(F, n, poly, overrides)
    if kind == "singer_frobenius":
        return singer_frobenius_group(F, n, poly, overrides)
    if kind == "matrices":
        return matrix_group(F, n, desc.get("matrices", []))
    raise ValueError(f"unknown group kind {kind!r}; expected one of {', '.join(KINDS)}")


def check_guard(F: FieldSpec, n: int, k: int, guard: int = DEFAULT_GUARD) -> None:
    total = qbinom(n, k, F.q)
    if total > guard:
        raise GuardError(f"{total} {k}-subspaces of F_{F.q}^{n} exceed the guard of {guard}")


def _bfs(g: GroupGens, s: Subspace) -> dict[bytes, Subspace]:
    F, n, k = g.field, g.n, s.k
    tables = F.tables
    gens = [a.entries for a in g.gens]
    seen = {s.canon: s}
    frontier = [s]
    while frontier:
        nxt = []
        for cur in frontier:
            for a in gens:
                canon, piv = kernels.mul_canon(a, cur.canon, n, n, k, tables)
                if canon not in seen:
                    img = Subspace(F, n, k, canon, tuple(p + 1 for p in piv))
                    seen[canon] = img
                    nxt.append(img)
        frontier = nxt
    return seen


def orbit(g: GroupGens, s: Subspace, guard: int = DEFAULT_GUARD) -> set[Subspace]:
    """G(S) = {alpha S : alpha in G}."""
    if s.n != g.n:
        raise ValueError("subspace and group act on different dimensions")
    if g.is_borel:
        if class_size(s.pivots, g.field.q) > guard:
            raise GuardError("Borel orbit exceeds the guard")
        return set(enum_class_members(s.pivots, g.field, g.n))
    check_guard(g.field, g.n, s.k, guard)
    return set(_bfs(g, s).values())


def orbits(g: GroupGens, k: int, guard: int = DEFAULT_GUARD) -> list[tuple[Subspace, list[Subspace]]]:
    """All orbits on k-subspaces as ``(rep, members)``, sorted by rep.

    The representative is the member with the least canonical byte string;
    for the Borel group it is E(pi) and orbits come in lexicographic pi order.
    """
    F, n = g.field, g.n
    if not 0 <= k <= n:
        raise ValueError(f"k={k} outside 0..{n}")
    check_guard(F, n, k, guard)
    if g.is_borel:
        return [(standard_rep(pi, F, n), list(enum_class_members(pi, F, n))) for pi in enum_pivot_sets(n, k)]
    seen: set[bytes] = set()
    out = []
    for s in enum_subspaces(F, n, k):
        if s.canon in seen:
            continue
        members = _bfs(g, s)
        seen.update(members)
        rep = members[min(members)]
        out.append((rep, sorted(members.values(), key=lambda x: x.canon)))
    out.sort(key=lambda o: o[0].canon)
    return out


def transversal(g: GroupGens, k: int, guard: int = DEFAULT_GUARD) -> list[tuple[Subspace, int]]:
    if g.is_borel:
        return [(standard_rep(pi, g.field, g.n), class_size(pi, g.field.q)) for pi in enum_pivot_sets(g.n, k)]
    return [(rep, len(members)) for rep, members in orbits(g, k, guard)]


def field_and_group(q: int, n: int, desc: dict, overrides=None) -> tuple[FieldSpec, GroupGens]:
    F = make_field(q, overrides=overrides)
    return F, group_from_descriptor(desc, F, n, overrides)

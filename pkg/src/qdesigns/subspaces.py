"""Counting and enumerating k-subspaces of F_q^n through echelon classes.

A pivot set is a strictly increasing tuple of 1-based row indices.  The
echelon class of a pivot set is the set of subspaces whose canonical
generator matrix has exactly these pivot rows; its free ("star") cells are the
non-pivot rows above each pivot.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product
from math import comb

from .gf import FieldSpec
from .linalg import Subspace

PivotSet = tuple[int, ...]


def qbinom(n: int, k: int, q: int) -> int:
    """Gaussian binomial coefficient; the ordinary binomial when q == 1."""
    if k < 0 or k > n:
        return 0
    if q == 1:
        return comb(n, k)
    num = den = 1
    for i in range(k):
        num *= q**n - q**i
        den *= q**k - q**i
    return num // den


def enum_pivot_sets(n: int, k: int) -> list[PivotSet]:
    """All k-subsets of {1..n}, lexicographic."""
    return list(combinations(range(1, n + 1), k))


def star_cells(pi: PivotSet) -> list[tuple[int, int]]:
    """Free cells ``(row, col)`` (1-based row, 0-based column), row-major."""
    pivots = set(pi)
    return sorted((r, j) for j, p in enumerate(pi) for r in range(1, p) if r not in pivots)


def star_count(pi: PivotSet) -> int:
    return sum(p - j for j, p in enumerate(pi, 1))


def class_size(pi: PivotSet, q: int) -> int:
    return q ** star_count(pi)


def _gamma_bytes(pi: PivotSet, n: int) -> bytearray:
    k = len(pi)
    buf = bytearray(n * k)
    for j, p in enumerate(pi):
        buf[(p - 1) * k + j] = 1
    return buf


def standard_rep(pi: PivotSet, F: FieldSpec, n: int) -> Subspace:
    """E(pi): the span of the unit vectors e_p, p in pi."""
    if list(pi) != sorted(set(pi)) or (pi and not 1 <= pi[0] <= pi[-1] <= n):
        raise ValueError(f"{pi} is not a pivot set in 1..{n}")
    return Subspace(F, n, len(pi), bytes(_gamma_bytes(pi, n)), tuple(pi))


def enum_class_members(pi: PivotSet, F: FieldSpec, n: int):
    """Yield every subspace in the echelon class of pi (odometer over stars)."""
    k = len(pi)
    base = _gamma_bytes(pi, n)
    offsets = [(r - 1) * k + j for r, j in star_cells(pi)]
    pivots = tuple(pi)
    for values in product(range(F.q), repeat=len(offsets)):
        buf = bytearray(base)
        for off, v in zip(offsets, values):
            buf[off] = v
        yield Subspace(F, n, k, bytes(buf), pivots)


def enum_subspaces(F: FieldSpec, n: int, k: int):
    """Every k-subspace of F_q^n, class by class."""
    for pi in enum_pivot_sets(n, k):
        yield from enum_class_members(pi, F, n)


def class_of(s: Subspace) -> PivotSet:
    return s.pivots


@lru_cache(maxsize=None)
def subspace_coordinates(F: FieldSpec, k: int, t: int) -> tuple[bytes, ...]:
    """Canonical k x t matrices of all t-subspaces of F_q^k.

    Multiplying a block's n x k generator by these yields generators of every
    t-subspace of the block.
    """
    return tuple(s.canon for s in enum_subspaces(F, k, t))

"""Designs over F_q: orbit selections, explicit blocks, verification.

A t-(n,K,lambda;q) design is a set of subspaces with dimensions in K such that
every t-subspace of F_q^n lies in exactly lambda of them.  ``q = 1`` is handled
as a separate set mode on subsets of {1..n}.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, islice
from math import comb

from ._backend import kernels
from .errors import DEFAULT_GUARD, GuardError
from .gf import FieldSpec, make_field
from .groups import GroupGens, borel_group, check_guard, group_from_descriptor, orbit
from .incidence import label_from_json, label_json
from .linalg import Matrix, Subspace, canonicalize
from .subspaces import PivotSet, class_size, enum_subspaces, qbinom, standard_rep, subspace_coordinates

MAX_VIOLATIONS = 10


@dataclass(frozen=True)
class DesignParams:
    t: int
    n: int
    K: tuple[int, ...]
    lam: int
    q: int

    def __post_init__(self):
        if not self.K or self.t > min(self.K) or max(self.K) > self.n:
            raise ValueError(f"invalid parameters t={self.t}, n={self.n}, K={self.K}")

    def __str__(self) -> str:
        K = "{" + ",".join(map(str, self.K)) + "}"
        if self.q == 1:
            return f"{self.t}-({self.n},{K},{self.lam})"
        return f"{self.t}-({self.n},{K},{self.lam};{self.q})"

    def to_json(self) -> dict:
        return {"t": self.t, "n": self.n, "K": list(self.K), "lambda": self.lam, "q": self.q}

    @classmethod
    def from_json(cls, d: dict) -> DesignParams:
        return cls(d["t"], d["n"], tuple(d["K"]), d.get("lambda", 0), d["q"])


@dataclass(frozen=True)
class OrbitSelection:
    """Chosen orbit representatives under a group.

    In set mode (``q == 1``) there is no group and the representatives are
    the blocks themselves, given as sorted tuples.
    """

    group: GroupGens | None
    n: int
    q: int
    reps: tuple


@dataclass
class VerifyResult:
    lam: int | None
    violations: list = field(default_factory=list)
    counts: Counter = field(default_factory=Counter)

    @property
    def balanced(self) -> bool:
        return self.lam is not None


def family_pivot_sets(t: int) -> list[PivotSet]:
    """Representatives of the Borel family on F_q^(t+4).

    (t+1)-subsets containing n = t+4, then (t+2)-subsets of {1..n-1}, both in
    lexicographic order.
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    n = t + 4
    base = range(1, n)
    return [tau + (n,) for tau in combinations(base, t)] + list(combinations(base, t + 2))


def borel_family_selection(t: int, q: int, F: FieldSpec | None = None):
    """The t-(t+4,{t+1,t+2},q^3+q^2+q+1;q) construction as an orbit selection."""
    n = t + 4
    lam = qbinom(n - t, 1, q) if q > 1 else 4
    params = DesignParams(t, n, (t + 1, t + 2), lam, q)
    pivots = family_pivot_sets(t)
    if q == 1:
        return OrbitSelection(None, n, 1, tuple(pivots)), params
    F = F or make_field(q)
    reps = tuple(standard_rep(pi, F, n) for pi in pivots)
    return OrbitSelection(borel_group(F, n), n, q, reps), params


def expand(sel: OrbitSelection, guard: int = DEFAULT_GUARD) -> list:
    """Union of the orbits of the selected representatives."""
    if sel.group is None:
        return sorted(tuple(sorted(b)) for b in sel.reps)
    blocks: dict[bytes, Subspace] = {}
    for rep in sel.reps:
        orb = orbit(sel.group, rep, guard)
        if any((s.k, s.canon) in blocks for s in orb):
            raise ValueError(f"representative {rep.pivots} repeats an already selected orbit")
        blocks.update(((s.k, s.canon), s) for s in orb)
        if len(blocks) > guard:
            raise GuardError(f"expansion exceeds the guard of {guard} blocks")
    return list(blocks.values())


def _summarize(counts: Counter, total: int, missing):
    """Collapse a coverage counter into a VerifyResult.

    ``missing`` lazily yields the uncovered t-objects; it is only consumed
    when uncovered objects are violations.
    """
    zeros = total - len(counts)
    hist = Counter(counts.values())
    if zeros:
        hist[0] += zeros
    if len(hist) <= 1:
        return VerifyResult(next(iter(hist), 0), [], hist)
    target = hist.most_common(1)[0][0]
    bad = [(key, c) for key, c in counts.items() if c != target]
    if target != 0:
        bad += [(key, 0) for key in islice(missing, MAX_VIOLATIONS)]
    bad.sort(key=lambda kc: (kc[1], str(kc[0])))
    return VerifyResult(None, bad[:MAX_VIOLATIONS], hist)


def verify_design(blocks, t: int, F: FieldSpec | None = None, n: int | None = None,
                  guard: int = DEFAULT_GUARD) -> VerifyResult:
    """Count, for every t-subspace, the blocks containing it."""
    blocks = list(blocks)
    if F is None or n is None:
        if not blocks:
            raise ValueError("field and n are required for an empty design")
        F, n = blocks[0].field, blocks[0].n
    if len({(b.k, b.canon) for b in blocks}) != len(blocks):
        raise ValueError("block list contains repeated blocks")
    check_guard(F, n, t, guard)
    counts: Counter = Counter()
    tables = F.tables
    for b in blocks:
        if b.n != n or b.k < t:
            raise ValueError("block does not fit the design parameters")
        counts.update(kernels.mul_canon_many(b.canon, subspace_coordinates(F, b.k, t), n, b.k, t, tables))
    total = qbinom(n, t, F.q)
    missing = (s for s in enum_subspaces(F, n, t) if s.canon not in counts)
    res = _summarize(counts, total, missing)
    by_key = {}
    for key, c in res.violations:
        if isinstance(key, Subspace):
            by_key[key.canon] = (key, c)
        else:
            by_key[key] = (_from_key(F, n, t, key), c)
    res.violations = list(by_key.values())
    return res


def _from_key(F: FieldSpec, n: int, t: int, key: bytes) -> Subspace:
    return canonicalize(Matrix(F, n, t, key))


def verify_set_design(blocks, n: int, t: int) -> VerifyResult:
    """Set-mode verifier: every t-subset of {1..n} against the blocks."""
    blocks = [tuple(sorted(b)) for b in blocks]
    if len(set(blocks)) != len(blocks):
        raise ValueError("block list contains repeated blocks")
    counts: Counter = Counter()
    for b in blocks:
        counts.update(combinations(b, t))
    missing = (s for s in combinations(range(1, n + 1), t) if s not in counts)
    return _summarize(counts, comb(n, t), missing)


def lambda_max(n: int, K, t: int, q: int) -> int:
    """Index of the trivial design: all subspaces with dimension in K."""
    return sum(qbinom(n - t, k - t, q) for k in K)


def alpha_beta(t: int, n: int, q: int) -> tuple[int, int]:
    """Row sums of the two row blocks of the selected Borel columns."""
    if n < t + 2:
        raise ValueError("need n >= t + 2")
    alpha = q ** (n - t - 1) + qbinom(n - t - 1, 2, q)
    beta = qbinom(n - t, 1, q)
    return alpha, beta


def q1_family(t: int) -> tuple[list[tuple[int, ...]], int]:
    """The t-(t+4,{t+1,t+2},4) set design, checked before it is returned."""
    blocks = family_pivot_sets(t)
    res = verify_set_design(blocks, t + 4, t)
    if res.lam != 4:
        raise RuntimeError(f"set family for t={t} failed to verify: {res.violations}")
    return blocks, 4


def are_disjoint(designs, F: FieldSpec | None = None, n: int | None = None, K=None):
    """Pairwise block-disjointness, plus whether the union is the trivial design.

    Returns ``(disjoint, covers)``; ``covers`` is None unless F, n and K are
    all given.
    """
    seen: set = set()
    disjoint = True
    for blocks in designs:
        keys = {_block_key(b) for b in blocks}
        if seen & keys:
            disjoint = False
        seen |= keys
    covers = None
    if F is not None and n is not None and K is not None:
        covers = disjoint and len(seen) == lambda_total(F.q, n, K) and all(k in K for k, _ in seen)
    return disjoint, covers


def lambda_total(q: int, n: int, K) -> int:
    return sum(qbinom(n, k, q) for k in K)


def _block_key(b):
    if isinstance(b, Subspace):
        return (b.k, b.canon)
    return (len(b), tuple(sorted(b)))


def trivial_design(F: FieldSpec, n: int, K) -> list[Subspace]:
    return [s for k in K for s in enum_subspaces(F, n, k)]


# --- JSON exchange ------------------------------------------------------------


def design_to_json(params: DesignParams, sel: OrbitSelection | None = None, blocks=None) -> dict:
    doc: dict = {"params": params.to_json()}
    if sel is not None and sel.group is not None:
        doc["group"] = sel.group.descriptor()
        if sel.group.field.m > 1:
            doc["modulus"] = list(sel.group.field.modulus)
        doc["representatives"] = [label_json(s) for s in sel.reps]
    elif sel is not None:
        doc["group"] = {"kind": "set"}
        doc["representatives"] = [list(b) for b in sel.reps]
    if blocks is not None:
        doc["blocks"] = [list(b) if not isinstance(b, Subspace) else label_json(b) for b in blocks]
    return doc


def load_design(doc: dict, overrides=None, guard: int = DEFAULT_GUARD):
    """Parse a design document into ``(params, field_or_None, blocks)``.

    Explicit ``blocks`` take precedence over representatives.
    """
    params = DesignParams.from_json(doc["params"])
    n = params.n
    if params.q == 1:
        raw = doc.get("blocks", doc.get("representatives", []))
        return params, None, [tuple(sorted(b)) for b in raw]
    F = make_field(params.q, doc.get("modulus"), overrides)
    if "blocks" in doc:
        return params, F, [label_from_json(d, F, n) for d in doc["blocks"]]
    group = group_from_descriptor(doc.get("group", {"kind": "trivial"}), F, n, overrides)
    reps = tuple(label_from_json(d, F, n) for d in doc.get("representatives", []))
    return params, F, expand(OrbitSelection(group, n, params.q, reps), guard)


def expanded_size(sel: OrbitSelection) -> int:
    """Number of blocks of a Borel selection without expanding it."""
    return sum(class_size(r.pivots, sel.q) for r in sel.reps)

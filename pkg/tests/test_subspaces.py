import itertools
import random
from math import comb

import pytest

from qdesigns._backend import kernels
from qdesigns.gf import make_field
from qdesigns.linalg import apply, random_borel, random_subspace
from qdesigns.subspaces import (
    class_of,
    class_size,
    enum_class_members,
    enum_pivot_sets,
    enum_subspaces,
    qbinom,
    standard_rep,
    star_cells,
)

# star cells (1-based row, 0-based column) of the echelon forms of F^6, k = 3
TABLE_STARS = {
    (1, 2, 3): [],
    (1, 2, 4): [(3, 2)],
    (1, 2, 5): [(3, 2), (4, 2)],
    (1, 2, 6): [(3, 2), (4, 2), (5, 2)],
    (1, 3, 4): [(2, 1), (2, 2)],
    (1, 3, 5): [(2, 1), (2, 2), (4, 2)],
    (1, 3, 6): [(2, 1), (2, 2), (4, 2), (5, 2)],
    (1, 4, 5): [(2, 1), (2, 2), (3, 1), (3, 2)],
    (1, 4, 6): [(2, 1), (2, 2), (3, 1), (3, 2), (5, 2)],
    (1, 5, 6): [(2, 1), (2, 2), (3, 1), (3, 2), (4, 1), (4, 2)],
    (2, 3, 4): [(1, 0), (1, 1), (1, 2)],
    (2, 3, 5): [(1, 0), (1, 1), (1, 2), (4, 2)],
    (2, 3, 6): [(1, 0), (1, 1), (1, 2), (4, 2), (5, 2)],
    (2, 4, 5): [(1, 0), (1, 1), (1, 2), (3, 1), (3, 2)],
    (2, 4, 6): [(1, 0), (1, 1), (1, 2), (3, 1), (3, 2), (5, 2)],
    (2, 5, 6): [(1, 0), (1, 1), (1, 2), (3, 1), (3, 2), (4, 1), (4, 2)],
    (3, 4, 5): [(1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)],
    (3, 4, 6): [(1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2), (5, 2)],
    (3, 5, 6): [(1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2), (4, 1), (4, 2)],
    (4, 5, 6): [(1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2), (3, 0), (3, 1), (3, 2)],
}


def q_pascal(n, k, q):
    """Independent oracle: [n,k] = [n-1,k-1] + q^k [n-1,k]."""
    if k < 0 or k > n:
        return 0
    if k == 0 or k == n:
        return 1
    return q_pascal(n - 1, k - 1, q) + q**k * q_pascal(n - 1, k, q)


def test_qbinom_values():
    assert qbinom(4, 1, 2) + qbinom(4, 2, 2) == 15 + 35 == 50
    assert qbinom(6, 3, 2) == 1395
    assert qbinom(5, 0, 7) == 1
    assert qbinom(3, 5, 2) == 0 and qbinom(3, -1, 2) == 0


@pytest.mark.parametrize("q", [1, 2, 3, 4, 5, 7])
def test_qbinom_against_q_pascal_and_symmetry(q):
    for n in range(10):
        for k in range(n + 1):
            assert qbinom(n, k, q) == q_pascal(n, k, q) == qbinom(n, n - k, q)
            if q == 1:
                assert qbinom(n, k, 1) == comb(n, k)


def test_qbinom_by_brute_force_generator_enumeration():
    # every full-rank 6x3 matrix over GF(2), canonicalized
    F = make_field(2)
    seen = set()
    for bits in range(1 << 18):
        m = bytes((bits >> i) & 1 for i in range(18))
        try:
            seen.add(kernels.canon(m, 6, 3, F.tables)[0])
        except ValueError:
            pass
    assert len(seen) == qbinom(6, 3, 2) == 1395


def test_pivot_sets_order():
    sets = enum_pivot_sets(6, 2)
    assert len(sets) == 15
    assert sets[:5] == [(1, 2), (1, 3), (1, 4), (1, 5), (1, 6)]
    assert enum_pivot_sets(4, 4) == [(1, 2, 3, 4)]
    assert enum_pivot_sets(6, 3) == list(TABLE_STARS)


def test_star_cells_match_echelon_table():
    for pi, stars in TABLE_STARS.items():
        assert star_cells(pi) == stars
        assert class_size(pi, 5) == 5 ** len(stars)
        assert len(stars) <= 3 * 3


def test_class_size_brute_force():
    # group all canonical 6x3 matrices over GF(2) by pivot set
    F = make_field(2)
    counts = {}
    for s in enum_subspaces(F, 6, 3):
        counts[s.pivots] = counts.get(s.pivots, 0) + 1
    for pi in TABLE_STARS:
        assert counts[pi] == class_size(pi, 2)
    assert class_size((2, 3, 6), 2) == 32
    assert class_size((1, 2, 3), 7) == 1
    assert class_size((4, 5, 6), 3) == 3 ** 9


def test_standard_rep(F2):
    s = standard_rep((2, 3, 6), F2, 6)
    assert s.columns() == [[0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0], [0, 0, 0, 0, 0, 1]]
    for pi in enum_pivot_sets(5, 2):
        assert class_of(standard_rep(pi, F2, 5)) == pi
    with pytest.raises(ValueError):
        standard_rep((3, 2), F2, 5)


def test_class_members(F2):
    members = list(enum_class_members((2, 3, 6), F2, 6))
    assert len(members) == len(set(members)) == 32
    assert all(class_of(s) == (2, 3, 6) for s in members)
    assert list(enum_class_members((1, 2, 3), F2, 6)) == [standard_rep((1, 2, 3), F2, 6)]
    assert members[0] == standard_rep((2, 3, 6), F2, 6)


def test_class_members_are_canonical(F3):
    from qdesigns.linalg import canonicalize

    for s in enum_class_members((2, 4, 5), F3, 6):
        assert canonicalize(s.matrix()) == s


def test_union_of_classes(F2):
    allsubs = list(enum_subspaces(F2, 6, 3))
    assert len(allsubs) == len(set(allsubs)) == 1395


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_class_sizes_sum_to_qbinom(q):
    for n in range(8):
        for k in range(n + 1):
            assert sum(class_size(pi, q) for pi in enum_pivot_sets(n, k)) == qbinom(n, k, q)


def test_q_equals_one():
    for n in range(7):
        for k in range(n + 1):
            assert all(class_size(pi, 1) == 1 for pi in enum_pivot_sets(n, k))


def test_class_of_worked_examples(F5):
    from qdesigns.linalg import subspace_from_columns

    a = subspace_from_columns(F5, [[2, 1, 0, 0, 0, 0], [1, 0, 1, 1, 0, 0], [1, 0, 4, 0, 2, 1]])
    b = subspace_from_columns(F5, [[4, 1, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0], [3, 0, 2, 0, 1, 1]])
    assert class_of(a) == class_of(b) == (2, 4, 6)


def test_random_borel_keeps_class(F3):
    rng = random.Random(0)
    for _ in range(100):
        s = random_subspace(F3, 6, rng.randint(1, 5), rng)
        assert class_of(apply(random_borel(F3, 6, rng), s)) == class_of(s)

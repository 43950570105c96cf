import itertools
import random

import pytest

from qdesigns.gf import make_field
from qdesigns.groups import borel_group, group_from_descriptor, singer_group, trivial_group
from qdesigns.incidence import (
    KMMatrix,
    borel_block_form,
    borel_entry,
    borel_family_matrix,
    borel_km_matrix,
    km_concat,
    km_matrix,
    q1_specialize,
    subset_incidence,
)
from qdesigns.linalg import contains
from qdesigns.groups import orbit
from qdesigns.subspaces import enum_pivot_sets, qbinom

# the matrix M between Borel orbits on 2-subspaces and the selected orbits
# on 3- and 4-subspaces of F_2^6, transcribed entry by entry
M_REFERENCE = [
    [8, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 2, 4, 0, 0],
    [0, 8, 0, 0, 0, 0, 0, 0, 0, 0, 1, 2, 0, 4, 0],
    [0, 0, 8, 0, 0, 0, 0, 0, 0, 0, 1, 0, 2, 4, 0],
    [0, 0, 0, 8, 0, 0, 0, 0, 0, 0, 0, 1, 2, 4, 0],
    [0, 0, 0, 0, 8, 0, 0, 0, 0, 0, 1, 2, 0, 0, 4],
    [0, 0, 0, 0, 0, 8, 0, 0, 0, 0, 1, 0, 2, 0, 4],
    [0, 0, 0, 0, 0, 0, 8, 0, 0, 0, 0, 1, 2, 0, 4],
    [0, 0, 0, 0, 0, 0, 0, 8, 0, 0, 1, 0, 0, 2, 4],
    [0, 0, 0, 0, 0, 0, 0, 0, 8, 0, 0, 1, 0, 2, 4],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 8, 0, 0, 1, 2, 4],
    [1, 2, 4, 8, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 2, 4, 8, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 2, 0, 0, 4, 8, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 2, 0, 4, 0, 8, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 2, 0, 4, 8, 0, 0, 0, 0, 0],
]
M_ROWS = [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5),
          (1, 6), (2, 6), (3, 6), (4, 6), (5, 6)]
M_COLS = [(1, 2, 6), (1, 3, 6), (1, 4, 6), (1, 5, 6), (2, 3, 6), (2, 4, 6), (2, 5, 6), (3, 4, 6), (3, 5, 6),
          (4, 5, 6), (1, 2, 3, 4), (1, 2, 3, 5), (1, 2, 4, 5), (1, 3, 4, 5), (2, 3, 4, 5)]


def brute_entry(g, T, S):
    return sum(contains(T, x) for x in orbit(g, S))


def test_matrix_M(F2):
    m = borel_family_matrix(F2, 6, 2)
    assert [s.pivots for s in m.row_labels] == M_ROWS
    assert [s.pivots for _, s in m.col_labels] == M_COLS
    assert m.entries == M_REFERENCE
    assert m.row_sums() == [15] * 15


def test_borel_entries(F2, F3):
    A = borel_km_matrix(F2, 6, 2, 3)
    assert A.entries[A.row_index((1, 2))][A.col_index((1, 2, 6))] == 8
    assert A.entries[A.row_index((1, 6))][A.col_index((1, 5, 6))] == 8
    A4 = borel_km_matrix(F2, 6, 2, 4)
    assert A4.entries[A4.row_index((1, 2))][A4.col_index((1, 3, 4, 5))] == 0


def test_support_and_power_pattern_f3(F3):
    A = borel_km_matrix(F3, 6, 2, 3)
    for i, T in enumerate(A.row_labels):
        for j, (_, S) in enumerate(A.col_labels):
            x = A.entries[i][j]
            assert (x != 0) == set(T.pivots).issubset(S.pivots)
            if x:
                while x % 3 == 0:
                    x //= 3
                assert x == 1


@pytest.mark.parametrize("q", [2, 3])
def test_borel_fast_path_equals_generic(q):
    F = make_field(q)
    for n in range(2, 7 if q == 2 else 6):
        b = borel_group(F, n)
        for t in range(0, 3):
            for k in range(t, min(n, t + 2) + 1):
                fast = borel_km_matrix(F, n, t, k)
                slow = km_matrix(b, t, k)
                assert fast.entries == slow.entries
                assert [s.pivots for s in fast.row_labels] == [s.pivots for s in slow.row_labels]


def test_closed_form_entry():
    for q in (2, 3):
        F = make_field(q)
        A = borel_km_matrix(F, 5, 2, 3)
        for i, tau in enumerate(enum_pivot_sets(5, 2)):
            for j, pi in enumerate(enum_pivot_sets(5, 3)):
                assert A.entries[i][j] == borel_entry(tau, pi, q)


def test_generic_entries_against_definition(F2):
    g = singer_group(F2, 5)
    A = km_matrix(g, 2, 3)
    for i, T in enumerate(A.row_labels):
        for j, (_, S) in enumerate(A.col_labels):
            assert A.entries[i][j] == brute_entry(g, T, S)


def test_trivial_group_gives_containment(F2):
    A = km_matrix(trivial_group(F2, 4), 1, 2)
    assert set(x for row in A.entries for x in row) <= {0, 1}
    for i, T in enumerate(A.row_labels):
        for j, (_, S) in enumerate(A.col_labels):
            assert A.entries[i][j] == int(contains(T, S))


@pytest.mark.parametrize("label", ["trivial", "borel", "singer", "singer_frobenius"])
def test_row_sums_constant(F2, label):
    for n in (5, 6, 7):
        g = group_from_descriptor({"kind": label}, F2, n)
        for t in (1, 2):
            if label == "trivial" and n == 7:
                continue
            for k in range(t + 1, 5):
                A = km_concat(g, t, (k,))
                assert set(A.row_sums()) == {qbinom(n - t, k - t, 2)}


def test_concat_single_block_identical(F2):
    g = singer_group(F2, 5)
    assert km_concat(g, 1, (2,)).entries == km_matrix(g, 1, 2).entries


def test_singer_concat_row_sums(F2):
    A = km_concat(singer_group(F2, 6), 2, (3, 4))
    assert A.row_sums() == [50] * len(A.row_labels)
    assert A.block_row_sums(3) == [15] * len(A.row_labels)


def test_q1_specialize(F2):
    for k in (3, 4):
        A = q1_specialize(borel_km_matrix(F2, 6, 2, k))
        assert A.entries == subset_incidence(6, 2, k)
        assert set(A.row_sums()) == {len(list(itertools.combinations(range(4), k - 2)))}
    with pytest.raises(ValueError):
        q1_specialize(km_matrix(singer_group(F2, 4), 1, 2))


def test_q1_of_diagonal_block(F2):
    A = q1_specialize(borel_km_matrix(F2, 4, 2, 2))
    assert A.entries == [[int(i == j) for j in range(6)] for i in range(6)]


@pytest.mark.parametrize("t, n, q", [(1, 5, 2), (2, 6, 2), (2, 6, 3)])
def test_block_form(t, n, q):
    F = make_field(q)
    blocks = borel_block_form(F, n, t)
    c1 = len(blocks["upper_left"][0])
    assert blocks["upper_left"] == [[q ** (n - t - 1) * (i == j) for j in range(c1)] for i in range(c1)]
    assert blocks["upper_middle"] == borel_km_matrix(F, n - 1, t, t + 2).entries
    assert blocks["lower_left"] == borel_km_matrix(F, n - 1, t - 1, t).entries
    assert all(x == 0 for row in blocks["lower_middle"] for x in row)


def test_exports(F2):
    m = borel_family_matrix(F2, 6, 2)
    back = KMMatrix.from_json(m.to_json(), F2)
    assert back.entries == m.entries and back.row_labels == m.row_labels and back.col_labels == m.col_labels
    csv = m.to_csv().splitlines()
    assert csv[0].startswith(',"E{1,2,6}"')
    assert csv[1].startswith('"E{1,2}",8,')


def test_json_roundtrip_general_labels(F2):
    m = km_concat(singer_group(F2, 5), 1, (2, 3))
    back = KMMatrix.from_json(m.to_json(), F2)
    assert back.col_labels == m.col_labels and back.entries == m.entries


def test_text_golden(F2):
    from pathlib import Path

    m = borel_family_matrix(F2, 6, 2)
    golden = (Path(__file__).parent / "golden" / "M.txt").read_text()
    assert m.to_text(10, 10) == golden

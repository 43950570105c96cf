import json
from itertools import combinations

import pytest

from qdesigns.designs import (
    DesignParams,
    OrbitSelection,
    alpha_beta,
    are_disjoint,
    borel_family_selection,
    design_to_json,
    expand,
    expanded_size,
    family_pivot_sets,
    lambda_max,
    load_design,
    q1_family,
    trivial_design,
    verify_design,
    verify_set_design,
)
from qdesigns.gf import make_field
from qdesigns.groups import borel_group
from qdesigns.incidence import borel_family_matrix
from qdesigns.subspaces import class_of, class_size, qbinom, standard_rep


def brute_set_lambda(blocks, n, t):
    """Every t-subset against every block, no shortcuts."""
    counts = {T: sum(set(T) <= set(b) for b in blocks) for T in combinations(range(1, n + 1), t)}
    return set(counts.values())


def test_family_representatives_t2():
    sel, params = borel_family_selection(2, 2)
    assert [r.pivots for r in sel.reps] == [
        (1, 2, 6), (1, 3, 6), (1, 4, 6), (1, 5, 6), (2, 3, 6), (2, 4, 6), (2, 5, 6), (3, 4, 6), (3, 5, 6),
        (4, 5, 6), (1, 2, 3, 4), (1, 2, 3, 5), (1, 2, 4, 5), (1, 3, 4, 5), (2, 3, 4, 5),
    ]
    assert (params.t, params.n, params.K, params.lam, params.q) == (2, 6, (3, 4), 15, 2)
    assert str(params) == "2-(6,{3,4},15;2)"


def test_family_set_mode_t1():
    sel, params = borel_family_selection(1, 1)
    blocks = expand(sel)
    assert sorted(blocks) == sorted([(1, 5), (2, 5), (3, 5), (4, 5), (1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)])
    assert brute_set_lambda(blocks, 5, 1) == {4}
    assert params.lam == 4


def test_family_declared_lambda_q3():
    assert borel_family_selection(2, 3)[1].lam == 40


def test_expand_counts_and_roundtrip(F2):
    sel, _ = borel_family_selection(2, 2)
    blocks = expand(sel)
    assert len(blocks) == sum(class_size(r.pivots, 2) for r in sel.reps) == expanded_size(sel)
    assert {class_of(b) for b in blocks} == {r.pivots for r in sel.reps}


def test_expand_single_prefix_rep(F2):
    sel = OrbitSelection(borel_group(F2, 6), 6, 2, (standard_rep((1, 2, 3), F2, 6),))
    assert len(expand(sel)) == 1


def test_expand_rejects_repeated_orbit(F2):
    g = borel_group(F2, 5)
    with pytest.raises(ValueError):
        expand(OrbitSelection(g, 5, 2, (standard_rep((1, 3), F2, 5), standard_rep((1, 3), F2, 5))))


def test_verify_family_t2_q2():
    sel, _ = borel_family_selection(2, 2)
    res = verify_design(expand(sel), 2)
    assert res.balanced and res.lam == 15


def test_verify_trivial_design(F2):
    res = verify_design(trivial_design(F2, 6, (3, 4)), 2)
    assert res.lam == 50 == lambda_max(6, (3, 4), 2, 2)


def test_verify_reports_violation():
    sel, _ = borel_family_selection(2, 2)
    blocks = expand(sel)
    res = verify_design(blocks[1:], 2)
    assert not res.balanced
    assert 1 <= len(res.violations) <= 10
    assert all(count == 14 for _, count in res.violations)
    assert res.counts[15] > 0


def test_verify_rejects_duplicates(F2):
    b = standard_rep((1, 2, 3), F2, 6)
    with pytest.raises(ValueError):
        verify_design([b, b], 2)


def test_verify_missing_subspaces_are_reported(F2):
    # two planes of F_2^3 meet in <e1>; two of the seven points are uncovered
    blocks = [standard_rep((1, 2), F2, 3), standard_rep((1, 3), F2, 3)]
    res = verify_design(blocks, 1)
    assert not res.balanced
    assert res.counts == {0: 2, 1: 4, 2: 1}
    assert sorted(c for _, c in res.violations) == [0, 0, 2]


def test_lambda_max_values():
    assert [lambda_max(n, (3, 4), 2, 2) for n in (6, 7, 8, 9)] == [50, 186, 714, 2794]
    assert lambda_max(6, (3, 4, 5), 2, 2) == 65
    assert lambda_max(7, (3, 4, 5), 2, 2) == 341
    assert lambda_max(8, (4, 5, 6), 3, 2) == 341
    assert lambda_max(5, (2,), 2, 3) == 1


def test_alpha_beta():
    assert alpha_beta(2, 6, 2) == (15, 15)
    a, b = alpha_beta(1, 4, 2)
    assert (a, b) == (5, 7) and a != b
    assert alpha_beta(3, 7, 3) == (40, 40)
    for t in range(1, 4):
        for q in (2, 3, 4):
            for n in range(t + 2, t + 9):
                a, b = alpha_beta(t, n, q)
                assert (a == b) == (n == t + 4)


@pytest.mark.parametrize("q", [2, 3])
def test_alpha_beta_match_selected_row_sums(q):
    F = make_field(q)
    for t, n in [(1, 5), (2, 6), (1, 6)]:
        m = borel_family_matrix(F, n, t)
        r1 = sum(1 for s in m.row_labels if n not in s.pivots)
        a, b = alpha_beta(t, n, q)
        sums = m.row_sums()
        assert set(sums[:r1]) == {a} and set(sums[r1:]) == {b}


def test_q1_family():
    for t in range(1, 7):
        blocks, lam = q1_family(t)
        assert lam == 4
        assert brute_set_lambda(blocks, t + 4, t) == {4}
        assert all(len(b) in (t + 1, t + 2) for b in blocks)
    blocks, _ = q1_family(2)
    assert blocks == family_pivot_sets(2)


def test_set_verifier_violation():
    res = verify_set_design([(1, 2), (2, 3)], 3, 1)
    assert not res.balanced


def test_are_disjoint(F2):
    sel, _ = borel_family_selection(2, 2)
    design = expand(sel)
    assert are_disjoint([design, design])[0] is False
    everything = trivial_design(F2, 6, (3, 4))
    keys = {(b.k, b.canon) for b in design}
    complement = [b for b in everything if (b.k, b.canon) not in keys]
    assert are_disjoint([design, complement], F2, 6, (3, 4)) == (True, True)
    assert are_disjoint([design[:5], complement], F2, 6, (3, 4)) == (True, False)


def test_are_disjoint_set_mode():
    assert are_disjoint([[(1, 2)], [(2, 3)]])[0]
    assert not are_disjoint([[(1, 2)], [(2, 1)]])[0]


def test_design_json_roundtrip(tmp_path):
    sel, params = borel_family_selection(1, 2)
    doc = json.loads(json.dumps(design_to_json(params, sel)))
    p2, F, blocks = load_design(doc)
    assert p2 == params and len(blocks) == expanded_size(sel)
    doc = json.loads(json.dumps(design_to_json(params, sel, expand(sel))))
    assert len(load_design(doc)[2]) == len(blocks)


def test_design_json_set_mode():
    sel, params = borel_family_selection(2, 1)
    p, F, blocks = load_design(json.loads(json.dumps(design_to_json(params, sel))))
    assert F is None and verify_set_design(blocks, p.n, p.t).lam == 4


def test_design_json_extension_field():
    sel, params = borel_family_selection(1, 4)
    doc = design_to_json(params, sel)
    assert doc["modulus"] == [1, 1, 1]
    _, F, blocks = load_design(doc)
    assert F.q == 4 and len(blocks) == expanded_size(sel)


def test_params_validation():
    with pytest.raises(ValueError):
        DesignParams(3, 6, (2, 4), 1, 2)
    with pytest.raises(ValueError):
        DesignParams(2, 4, (3, 5), 1, 2)

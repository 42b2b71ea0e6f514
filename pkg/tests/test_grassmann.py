from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from polystab.exactla import as_matrix, det, kernel, rank
from polystab.grassmann import (
    Subspace,
    complement,
    dual_from_primal,
    index_label,
    is_tnn,
    is_tp,
    maximal_minors,
    primal_from_dual,
    sigma_sign,
    subsets,
    three_term_relations,
    vector_sign_changes,
)

from conftest import V_LINE, W_LINE


def labels(n, k):
    return [index_label(s, n) for s in subsets(n, k)]


def test_subsets():
    assert labels(4, 2) == ["12", "13", "14", "23", "24", "34"]
    assert subsets(5, 0) == ((),)
    assert len(subsets(6, 4)) == 15 and list(subsets(6, 4)) == sorted(subsets(6, 4))
    with pytest.raises(ValueError):
        subsets(2, 3)


def test_index_label_wide():
    assert index_label((0, 9, 10), 11) == "1,10,11"


def test_sigma_examples():
    assert sigma_sign((0, 1), 4) == 1
    assert sigma_sign((2, 3), 4) == 1
    assert sigma_sign((1, 3), 4) == -1


def test_dual_pluecker_examples():
    assert Subspace.from_rows([[1, 0, 0, 0], [0, 1, 0, 0]]).dual_pluecker.entries == (1, 0, 0, 0, 0, 0)
    assert Subspace.from_rows(V_LINE).dual_pluecker.entries == (1, 2, 1, -1, -1, -1)
    assert Subspace.from_rows(W_LINE).dual_pluecker.entries == (1, -2, 1, -1, 1, -1)


def test_primal_examples():
    e12 = Subspace.from_rows([[1, 0, 0, 0], [0, 1, 0, 0]])
    p = primal_from_dual(e12.dual_pluecker)
    assert p[(2, 3)] == 1 and sum(abs(x) for x in p.entries) == 1
    pv = primal_from_dual(Subspace.from_rows(V_LINE).dual_pluecker)
    pw = primal_from_dual(Subspace.from_rows(W_LINE).dual_pluecker)
    signs = [(pv[s] > 0) - (pv[s] < 0) for s in [(0, 1), (0, 3), (1, 2), (2, 3)]]
    assert signs in ([-1, -1, 1, 1], [1, 1, -1, -1])
    assert signs == [-1, -1, 1, 1]
    assert pv[(0, 2)] == 1 and pw[(0, 2)] == -1


def test_primal_matches_kernel_minors():
    # p should be the dual coordinates of the orthogonal complement, up to a scalar
    for rows in (V_LINE, W_LINE, [[1, 2, 0, 3, 1], [0, 1, 1, 1, 2]]):
        v = Subspace.from_rows(rows)
        p = primal_from_dual(v.dual_pluecker)
        kv = maximal_minors(kernel(v.basis))
        ratios = {a / b for a, b in zip(p.entries, kv) if b}
        assert len(ratios) == 1
        assert all((a == 0) == (b == 0) for a, b in zip(p.entries, kv))


def subspace_strategy(k, n):
    row = st.lists(st.integers(-6, 6), min_size=n, max_size=n)
    return st.lists(row, min_size=k, max_size=k).filter(lambda m: rank(as_matrix(m)) == k).map(Subspace.from_rows)


@st.composite
def any_subspace(draw, max_n=6):
    n = draw(st.integers(2, max_n))
    k = draw(st.integers(1, n - 1))
    return draw(subspace_strategy(k, n))


@given(any_subspace())
def test_duality_involution(v):
    q = v.dual_pluecker
    back = dual_from_primal(primal_from_dual(q))
    assert back.entries == q.entries


@settings(max_examples=80)
@given(any_subspace())
def test_three_term_relations_hold(v):
    assert all(r == 0 for r in three_term_relations(v.dual_pluecker))


def test_three_term_relations_detect_non_pluecker():
    from polystab.grassmann import PlueckerVec
    bogus = PlueckerVec("dual", 4, 2, tuple(map(Fraction, (1, 1, 1, 1, 1, 1))))
    assert any(three_term_relations(bogus))


@given(any_subspace(5), st.data())
def test_row_mix_scales_pluecker(v, data):
    g = data.draw(st.lists(st.lists(st.integers(-3, 3), min_size=v.k, max_size=v.k), min_size=v.k, max_size=v.k)
                  .filter(lambda g: det(as_matrix(g)) != 0))
    d = det(as_matrix(g))
    mixed = Subspace.from_rows([[sum(gi[j] * v.basis[j][c] for j in range(v.k)) for c in range(v.n)] for gi in g])
    assert mixed.dual_pluecker.entries == tuple(d * x for x in v.dual_pluecker.entries)


def test_positivity_examples():
    e12 = Subspace.from_rows([[1, 0, 0, 0], [0, 1, 0, 0]])
    assert is_tnn(e12) and not is_tp(e12)
    vdm = Subspace.from_rows([[1, 1, 1, 1, 1], [1, 2, 3, 4, 5]])
    assert is_tp(vdm)
    assert not is_tnn(Subspace.from_rows(V_LINE))


@given(any_subspace(5))
def test_tp_implies_tnn(v):
    assert not is_tp(v) or is_tnn(v)


@settings(max_examples=40)
@given(st.integers(2, 5), st.data())
def test_tnn_span_has_few_sign_changes(n, data):
    k = data.draw(st.integers(1, n - 1))
    nodes = sorted(data.draw(st.lists(st.integers(-8, 8), min_size=n, max_size=n, unique=True)))
    v = Subspace.from_rows([[t ** e for t in nodes] for e in range(k)])
    assert is_tp(v)
    for coeffs in product(range(-2, 3), repeat=k):
        if any(coeffs):
            x = [sum(c * v.basis[i][j] for i, c in enumerate(coeffs)) for j in range(n)]
            assert vector_sign_changes(x) <= k - 1


def test_vector_sign_changes():
    assert vector_sign_changes([1, 2, 3]) == 0
    assert vector_sign_changes([1, 1, -1, 1]) == 2
    assert vector_sign_changes([1, 0, -1, 0, 1]) == 2


def test_complement():
    assert complement((0, 2), 4) == (1, 3)

from fractions import Fraction
from math import ceil

import pytest

from polystab import polytope
from polystab.amplikit import (
    amplituhedron_point,
    ampl_sign_membership,
    banded_reference,
    gale_facets,
    in_reference_closure,
    nonneg_chamber_check,
    stab_faces_m2,
    twistor,
    vandermonde,
)
from polystab.census import sample_subspace
from polystab.chow import chow_form, evaluate
from polystab.grassmann import Subspace, is_tnn, is_tp, subsets
from polystab.polytope import Face, intersects
from polystab.stab import default_chow_vector


def image_point(k, n, m, c_nodes=None, z_nodes=None):
    c_nodes = c_nodes or list(range(1, n + 1))
    z_nodes = z_nodes or list(range(1, n + 1))
    c = vandermonde(k, n, c_nodes)
    z = tuple(zip(*vandermonde(k + m, n, z_nodes)))
    return amplituhedron_point(c, z), polytope.cyclic(n, k + m, z_nodes)


def test_gale_examples():
    assert set(gale_facets(5, 5)) == {(0, 1, 2, 3), (0, 1, 3, 4), (0, 1, 2, 4), (0, 2, 3, 4), (1, 2, 3, 4)}
    # five points on the curve in P^3: a polytope with six triangles
    assert len(gale_facets(5, 4)) == 6
    assert set(gale_facets(4, 4)) == set(subsets(4, 3))
    with pytest.raises(ValueError):
        gale_facets(3, 4)


@pytest.mark.parametrize("m,n", [(6, 4), (8, 4), (7, 5), (8, 6)])
def test_gale_matches_geometry(m, n):
    geo = {f.vertices for f in polytope.facets(polytope.cyclic(m, n))}
    assert geo == set(gale_facets(m, n))


def test_vandermonde():
    assert is_tp(Subspace(vandermonde(2, 4, [1, 2, 3, 4])))
    one = Subspace(vandermonde(1, 4, [1, 2, 3, 4]))
    assert is_tnn(one) and is_tp(one)
    assert is_tp(Subspace(vandermonde(3, 5, [0, 1, 2, 3, 4])))
    for i in range(10):
        nodes = [Fraction(x + i, 3) for x in range(0, 10, 2)]
        assert is_tp(Subspace(vandermonde(3, 5, nodes)))
    with pytest.raises(ValueError):
        vandermonde(2, 3, [1, 1, 2])


def test_twistor_basics():
    cyc = polytope.cyclic(6, 4)
    v = Subspace.from_rows([cyc.vertices[0], [0, 1, 0, 2]])
    assert twistor(v, cyc, (0, 3)) == 0
    w = sample_subspace(4, 2, 1, 0)
    assert twistor(w, cyc, (1, 4)) == -twistor(w, cyc, (4, 1))
    with pytest.raises(ValueError):
        twistor(w, cyc, (1, 2, 3))


def test_twistor_is_chow_value():
    k, m = 1, 3
    cyc = polytope.cyclic(6, 4)
    cv = default_chow_vector(cyc, k)
    for i in range(10):
        v = sample_subspace(4, k, 2, i)
        ev = evaluate(cv, v)
        for f, form, x in zip(cv.faces, cv.forms, ev.values):
            assert twistor(v, cyc, form.rows) == (-1) ** (k * m) * form.scale * x


def test_membership_examples():
    cyc = polytope.cyclic(4, 3)
    inside = Subspace.from_rows([[sum(r[c] for r in cyc.vertices) for c in range(3)]])
    res = ampl_sign_membership(inside, cyc, 2)
    assert res.member and res.flip_count == 1 and res.proven
    off = Subspace.from_rows([[1, 2, 3]])
    res = ampl_sign_membership(off, cyc, 2)
    assert not res.member and res.flip_count == 0 and "flips" in res.failed_condition
    on_vertex = Subspace.from_rows([cyc.vertices[0]])
    assert ampl_sign_membership(on_vertex, cyc, 2).boundary


@pytest.mark.parametrize("k,n,m", [(1, 4, 2), (2, 5, 2), (2, 6, 2), (3, 6, 1), (2, 5, 1), (1, 6, 4), (2, 7, 3)])
def test_image_points_are_members(k, n, m):
    y, cyc = image_point(k, n, m)
    res = ampl_sign_membership(y, cyc, m)
    assert res.member and res.flip_count == k
    assert res.proven == (m in (1, 2))
    assert intersects(cyc, y)


@pytest.mark.parametrize("k,n,m", [(1, 5, 2), (2, 6, 2), (2, 6, 3)])
def test_flip_count_bounded(k, n, m):
    cyc = polytope.cyclic(n, k + m)
    for i in range(60):
        v = sample_subspace(k + m, k, 4, i)
        assert ampl_sign_membership(v, cyc, m).flip_count <= k


def test_banded_reference():
    w = banded_reference(2, 4)
    assert w.basis == ((1, 1, 1, 0), (0, 1, 1, 1))
    assert nonneg_chamber_check(w)
    assert nonneg_chamber_check(Subspace(vandermonde(2, 4, [1, 2, 3, 4])))
    assert nonneg_chamber_check(Subspace.from_rows([[1, 0, 0, 0], [0, 1, 0, 0]]))
    with pytest.raises(ValueError):
        nonneg_chamber_check(Subspace.from_rows([[1, 0, 1, 1], [0, 1, 2, 1]]))


def test_reference_closure_is_strictly_larger():
    from polystab.census import find_strict_nonneg_witness
    v = find_strict_nonneg_witness(seed=0, attempts=5000)
    assert v is not None and not is_tnn(v) and in_reference_closure(v)


def test_stab_faces_m2_reporting():
    y, cyc = image_point(2, 5, 2)
    rep = stab_faces_m2(y, cyc)
    assert rep.expected == 1 and rep.faces_hit
    assert all(f.vertices[0] == 0 for f in rep.fan_faces)
    y, cyc = image_point(3, 6, 2)
    rep = stab_faces_m2(y, cyc)
    assert rep.expected == ceil(3 / 2)
    assert len(rep.faces_hit) >= 1

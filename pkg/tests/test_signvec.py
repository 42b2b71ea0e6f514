from itertools import product

import pytest
from hypothesis import given, strategies as st

from polystab.signvec import SignVec, canonical, equiv, leq, sign_of, var, var_bar

S = SignVec.parse
signs = st.lists(st.sampled_from([-1, 0, 1]), min_size=1, max_size=12).map(SignVec)


def brute_var_bar(s):
    zeros = [i for i, e in enumerate(s) if e == 0]
    best = 0
    for fill in product((1, -1), repeat=len(zeros)):
        t = list(s)
        for i, f in zip(zeros, fill):
            t[i] = f
        best = max(best, var(t))
    return best


def test_parse_and_str():
    assert str(S("+-0")) == "+-0"
    assert S("+-0") == SignVec((1, -1, 0))
    with pytest.raises(ValueError):
        S("+x")


def test_sign_of():
    assert str(sign_of([1, -2, 0])) == "+-0"
    assert str(sign_of([3, 1, 2])) == "+++"


def test_canonical():
    assert str(canonical(S("--+"))) == "++-"
    assert str(canonical(S("0-+"))) == "0+-"
    assert str(canonical(S("+0-"))) == "+0-"


def test_equiv():
    assert equiv(S("--++"), S("++--"))
    assert not equiv(S("+0"), S("++"))
    with pytest.raises(ValueError):
        equiv(S("+"), S("++"))


def test_leq():
    assert leq(S("+0-"), S("++-"))
    assert not leq(S("++"), S("+-"))
    assert leq(S("000"), S("+-+"))
    assert leq(S("-0+"), S("+--"))


def test_var_examples():
    assert (var(S("+-+")), var_bar(S("+-+"))) == (2, 2)
    assert (var(S("+0+")), var_bar(S("+0+"))) == (0, 2)
    assert (var(S("+++")), var_bar(S("+++"))) == (0, 0)


@given(signs)
def test_canonical_idempotent_and_flip_invariant(s):
    assert canonical(canonical(s)) == canonical(s)
    assert canonical(-s) == canonical(s)
    assert equiv(s, -s)


@given(st.integers(1, 8).flatmap(lambda n: st.tuples(*[st.lists(st.sampled_from([-1, 0, 1]), min_size=n, max_size=n)] * 2)))
def test_leq_antisymmetry(pair):
    a, b = map(SignVec, pair)
    if leq(a, b) and leq(b, a):
        assert equiv(a, b)


@given(signs)
def test_var_bar_closed_form(s):
    vb = var_bar(s)
    assert vb == brute_var_bar(s)
    # one zero can add two changes, as in (+,0,+)
    assert var(s) <= vb <= var(s) + 2 * s.count(0)


def test_var_bar_exhaustive_short():
    for n in range(1, 7):
        for s in product((-1, 0, 1), repeat=n):
            assert var_bar(s) == brute_var_bar(s)
